"""Batch checks over graph corpora, driven by a JSON manifest.

A manifest is ``{"name": str, "checks": [{"check": <kind>, ...params}]}``.
Every check returns a CheckOutcome; failures carry up to ``MAX_DUMPS``
counterexamples so a red run can be reproduced by hand.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .bounds import check_t_bounds
from .certificates import check_certificate, search_certificate
from .colouring import Status, decide_interval_colourable, max_palette, verify_interval
from .generators import ExtremalSpec, gen_extremal, hub_gadget, random_gnp
from .graph import Graph
from .oracles import brute_interval_colouring
from .smallgraphs import graphs_up_to

MAX_DUMPS = 10


@dataclass
class CheckOutcome:
    check: str
    instances: int = 0
    failures: list[dict] = field(default_factory=list)
    failed: int = 0
    positives: int = 0  # instances where the check had something to verify

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def fail(self, key: str, graph: Graph, **detail) -> None:
        self.failed += 1
        if len(self.failures) < MAX_DUMPS:
            self.failures.append({"instance": key, "graph": graph.to_dict(), **detail})

    def to_dict(self) -> dict:
        self.failures.sort(key=lambda f: f["instance"])
        return {
            "check": self.check,
            "instances": self.instances,
            "failed": self.failed,
            "passed": self.passed,
            "positives": self.positives,
            "counterexamples": self.failures,
        }


def oracle_equivalence(max_n: int = 6) -> CheckOutcome:
    out = CheckOutcome("oracle-equivalence")
    for i, g in enumerate(graphs_up_to(max_n, connected=True)):
        out.instances += 1
        fast = decide_interval_colourable(g)
        slow = brute_interval_colouring(g) is not None
        if fast.status is Status.TIMEOUT or fast.colourable != slow:
            out.fail(f"n{g.n}-{i:04d}", g, solver=fast.status.value, oracle=slow)
    return out


def extremal(s_max: int = 8, s_min: int = 2, odd_extension: bool = False) -> CheckOutcome:
    out = CheckOutcome("extremal")
    for s in range(s_min, s_max + 1):
        spec = ExtremalSpec.all_blue(s, odd_extension)
        g, colours = gen_extremal(spec)
        out.instances += 1
        expected = 3 * s - 2 + int(odd_extension)
        t = max_palette(g).t
        if not verify_interval(g, colours) or len(set(colours)) != expected or t != expected:
            out.fail(f"s{s:02d}", g, t=t, expected=expected)
    return out


def bounds(max_n: int = 7, connected: bool = False) -> CheckOutcome:
    out = CheckOutcome("bounds")
    for i, g in enumerate(graphs_up_to(max_n, connected=connected)):
        t = max_palette(g, use_bounds=False).t
        if t is None:
            continue
        out.instances += 1
        report = check_t_bounds(g, t)
        if not report.ok:
            out.fail(f"n{g.n}-{i:04d}", g, report=report.to_dict())
    return out


def perturbed_gadget(rng: random.Random) -> Graph:
    """A hub gadget with a few random extra edges; usually certifiable."""
    g = hub_gadget(rng.randint(2, 5), rng.randint(4, 9))
    edges = list(g.edges)
    present = set(edges)
    for _ in range(rng.randint(0, 3)):
        a, b = sorted(rng.sample(range(g.n), 2))
        if (a, b) not in present and (b, a) not in present:
            present.add((a, b))
            edges.append((a, b))
    return Graph(g.n, tuple(edges))


def certificate_soundness(max_n: int = 6, random_graphs: int = 0, random_max_n: int = 12,
                          seed: int = 0, gadgets: int = 0) -> CheckOutcome:
    out = CheckOutcome("certificate-soundness")
    corpus = [(f"small-{i:05d}", g) for i, g in enumerate(graphs_up_to(max_n))]
    rng = random.Random(seed)
    for i in range(random_graphs):
        n = rng.randint(3, random_max_n)
        corpus.append((f"random-{i:04d}", random_gnp(n, rng.uniform(0.15, 0.9), rng.randrange(2**32))))
    for i in range(gadgets):
        corpus.append((f"gadget-{i:04d}", perturbed_gadget(rng)))
    for key, g in corpus:
        out.instances += 1
        cert = search_certificate(g)
        if cert is None:
            continue
        out.positives += 1
        ok = check_certificate(g, cert).ok
        verdict = decide_interval_colourable(g).status
        if not ok or verdict is not Status.NOT_COLOURABLE:
            out.fail(key, g, certificate=cert.to_dict(), solver=verdict.value, check=ok)
    return out


CHECKS = {
    "oracle-equivalence": oracle_equivalence,
    "extremal": extremal,
    "bounds": bounds,
    "certificate-soundness": certificate_soundness,
}


def run_manifest(manifest: dict) -> dict:
    if not isinstance(manifest, dict):
        raise ValueError("manifest must be a JSON object")
    results = []
    for entry in manifest.get("checks", []):
        params = dict(entry)
        kind = params.pop("check", None)
        if kind not in CHECKS:
            raise ValueError(f"unknown check {kind!r}; expected one of {sorted(CHECKS)}")
        results.append(CHECKS[kind](**params).to_dict())
    return {
        "name": manifest.get("name", ""),
        "checks": results,
        "passed": all(r["passed"] for r in results),
    }


def load_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)

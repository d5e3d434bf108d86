"""Checkpointed prime-search campaigns for the exceptional sets.

A campaign is a deterministic per-prime predicate scanned over a range in
blocks; after each block the full state is flushed to a single JSON document
replaced atomically, so a killed run resumes to exactly the hits an
uninterrupted run would have produced.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import _kernels, config
from .errors import CheckpointError, DomainError
from .modmath import iter_primes

__all__ = [
    "Campaign",
    "CAMPAIGNS",
    "Checkpoint",
    "run_campaign",
    "run_sharded",
    "verify_expected",
    "VerifyReport",
]

CHECKPOINT_VERSION = 1


# ---------------------------------------------------------------------------
# Campaign predicates (block scans: primes -> hits)

def _scan_wilson_zero(primes, params):
    ws = _kernels.wilson_scan(primes)
    return [p for p, w in zip(primes, ws) if w == 0]


def _scan_wieferich(primes, params):
    return [p for p in primes if p != 2 and pow(2, p - 1, p * p) == 1]


def _scan_mirimanoff(primes, params):
    return [p for p in primes if p != 3 and pow(3, p - 1, p * p) == 1]


def _scan_gertsch_wilson(primes, params):
    gs, ws = _kernels.gertsch_wilson_scan(primes)
    return [p for p, g, w in zip(primes, gs, ws) if g == w]


def _scan_gertsch_zero(primes, params):
    gs, _ = _kernels.gertsch_wilson_scan(primes)
    return [p for p, g in zip(primes, gs) if g == 0]


def _scan_wilson_plus_two(primes, params):
    # zeros of the alternating Bernoulli index sum, which is W_p + 2 (mod p),
    # searched as W_p = -2 so no Bernoulli table bounds the range
    ws = _kernels.wilson_scan(primes)
    return [p for p, w in zip(primes, ws) if (w + 2) % p == 0]


def _scan_wilson_plus_half(primes, params):
    # zeros of the even Bernoulli index sum = W_p + 1/2 (mod p)
    ws = _kernels.wilson_scan(primes)
    return [p for p, w in zip(primes, ws) if (w + (p + 1) // 2) % p == 0]


def _scan_kurepa_zero(primes, params):
    ks = _kernels.kurepa_scan(primes)
    return [p for p, k in zip(primes, ks) if k == 0]


def _scan_qpm_zero(primes, params):
    """(m, p) pairs with Q_p(m) = AG_p + q_p(m) = 0 (mod p), via AG_p = W_p+1."""
    m_max = int(params.get("m_max", 20))
    ws = _kernels.wilson_scan(primes)
    hits = []
    for p, w in zip(primes, ws):
        m2 = p * p
        ag = (w + 1) % p
        for m in range(2, m_max + 1):
            if m % p == 0:
                continue
            q = (pow(m, p - 1, m2) - 1) // p % p
            if (ag + q) % p == 0:
                hits.append((m, p))
    return hits


@dataclass(frozen=True)
class Campaign:
    name: str
    description: str
    scan: Callable[[list[int], dict], list]
    pair_hits: bool = False
    # desk-scale expected fixture: (lo, hi, hits, mode)
    expected: Optional[tuple] = None


CAMPAIGNS: dict[str, Campaign] = {c.name: c for c in [
    Campaign("wilson_zero", "W_p = 0 (mod p): Wilson primes",
             _scan_wilson_zero, expected=(3, 10_000, (5, 13, 563), "equal")),
    Campaign("wieferich", "q_p(2) = 0 (mod p): Wieferich primes",
             _scan_wieferich, expected=(3, 1_000_000, (1093, 3511), "equal")),
    Campaign("mirimanoff", "q_p(3) = 0 (mod p): Mirimanoff primes",
             _scan_mirimanoff, expected=(3, 1_100_000, (11, 1_006_003), "equal")),
    Campaign("gertsch_wilson", "Gertsch_p = W_p (mod p)",
             _scan_gertsch_wilson, expected=(3, 3000, (3, 7, 2887), "equal")),
    Campaign("gertsch_zero", "Gertsch_p = 0 (mod p): no hits known",
             _scan_gertsch_zero, expected=(3, 3000, (), "equal")),
    Campaign("wilson_plus_two", "W_p + 2 = 0 (mod p)",
             _scan_wilson_plus_two, expected=(3, 2000, (3, 7, 71), "equal")),
    Campaign("wilson_plus_half", "W_p + 1/2 = 0 (mod p)",
             _scan_wilson_plus_half, expected=(3, 1500, (3, 227, 1163), "equal")),
    Campaign("kurepa_zero", "!p = 0 (mod p): no hits known",
             _scan_kurepa_zero, expected=(3, 100_000, (), "equal")),
    Campaign("qpm_zero", "pairs (m, p) with AG_p + q_p(m) = 0 (mod p)",
             _scan_qpm_zero, pair_hits=True,
             expected=(3, 37, ((2, 3), (6, 7), (14, 19), (5, 23), (19, 31),
                               (20, 37)), "contains")),
]}


# ---------------------------------------------------------------------------
# Checkpoints

@dataclass
class Checkpoint:
    campaign: str
    lo: int
    hi: int
    last_p: int          # last prime processed (lo-1 before any work)
    hits: list = field(default_factory=list)
    elapsed_s: float = 0.0
    scanned: int = 0     # primes processed, for primes/second accounting
    version: int = CHECKPOINT_VERSION

    @property
    def complete(self) -> bool:
        return self.last_p >= self._last_possible

    @property
    def _last_possible(self) -> int:
        return self.hi

    @property
    def primes_per_second(self) -> float:
        return self.scanned / self.elapsed_s if self.elapsed_s > 0 else float("inf")

    def to_json(self) -> str:
        return json.dumps({
            "campaign": self.campaign, "lo": self.lo, "hi": self.hi,
            "last_p": self.last_p,
            "hits": [list(h) if isinstance(h, tuple) else h for h in self.hits],
            "elapsed_s": round(self.elapsed_s, 6),
            "scanned": self.scanned,
            "version": self.version,
        })

    def write(self, path: str):
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            fh.write(self.to_json())
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)


def load_checkpoint(path: str) -> Checkpoint:
    try:
        with open(path) as fh:
            obj = json.load(fh)
        if obj.get("version") != CHECKPOINT_VERSION:
            raise CheckpointError(
                f"unsupported checkpoint version {obj.get('version')!r}")
        hits = [tuple(h) if isinstance(h, list) else h for h in obj["hits"]]
        ck = Checkpoint(campaign=obj["campaign"], lo=int(obj["lo"]),
                        hi=int(obj["hi"]), last_p=int(obj["last_p"]),
                        hits=hits, elapsed_s=float(obj["elapsed_s"]),
                        scanned=int(obj.get("scanned", 0)))
    except CheckpointError:
        raise
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise CheckpointError(f"corrupt checkpoint {path!r}: {e}") from e
    for h in ck.hits:
        p = h[1] if isinstance(h, tuple) else h
        if not ck.lo <= p <= ck.last_p:
            raise CheckpointError(
                f"corrupt checkpoint {path!r}: hit {h} outside [{ck.lo}, last_p]")
    return ck


def _chunked(it, size):
    chunk = []
    for x in it:
        chunk.append(x)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _scan_block(campaign: Campaign, primes: list[int], params: dict,
                workers: int) -> list:
    if workers <= 1 or len(primes) < 2 * workers:
        return campaign.scan(primes, params)
    size = (len(primes) + workers - 1) // workers
    shards = [primes[i: i + size] for i in range(0, len(primes), size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda s: campaign.scan(s, params), shards))
    out = []
    for part in parts:
        out.extend(part)
    return out


def run_campaign(name: str, lo: int, hi: int, *,
                 checkpoint_path: Optional[str] = None,
                 resume: bool = False,
                 stride: int = config.CHECKPOINT_STRIDE,
                 workers: int = config.WORKERS,
                 params: Optional[dict] = None,
                 stop_after_blocks: Optional[int] = None,
                 progress: Optional[Callable[[Checkpoint], None]] = None) -> Checkpoint:
    """Scan [lo, hi] for a campaign's hits, flushing a checkpoint every
    `stride` primes.

    With resume=True the checkpoint at checkpoint_path is loaded, validated
    against (name, lo, hi) and continued past its last processed prime;
    interrupted-and-resumed runs produce hits identical to uninterrupted
    ones. stop_after_blocks is a testing hook that abandons the scan early
    (after flushing), simulating a kill at a checkpoint boundary.
    """
    if name not in CAMPAIGNS:
        raise DomainError(f"unknown campaign {name!r}; "
                          f"known: {', '.join(sorted(CAMPAIGNS))}")
    if stride < 1:
        raise DomainError("stride must be >= 1")
    campaign = CAMPAIGNS[name]
    params = dict(params or {})

    if resume:
        if not checkpoint_path:
            raise CheckpointError("resume requested without a checkpoint path")
        ck = load_checkpoint(checkpoint_path)
        if (ck.campaign, ck.lo, ck.hi) != (name, lo, hi):
            raise CheckpointError(
                f"checkpoint is for {ck.campaign}[{ck.lo},{ck.hi}], "
                f"not {name}[{lo},{hi}]")
        start = ck.last_p + 1
    else:
        ck = Checkpoint(campaign=name, lo=lo, hi=hi, last_p=lo - 1)
        start = lo

    t0 = time.monotonic()
    blocks_done = 0
    if start <= hi:
        for block in _chunked(iter_primes(max(start, 2), hi), stride):
            hits = _scan_block(campaign, block, params, workers)
            ck.hits.extend(hits)
            ck.last_p = block[-1]
            ck.scanned += len(block)
            ck.elapsed_s += time.monotonic() - t0
            t0 = time.monotonic()
            if checkpoint_path:
                ck.write(checkpoint_path)
            if progress:
                progress(ck)
            blocks_done += 1
            if stop_after_blocks is not None and blocks_done >= stop_after_blocks:
                return ck
    # range exhausted: mark the whole range processed
    ck.last_p = max(ck.last_p, hi)
    ck.elapsed_s += time.monotonic() - t0
    if checkpoint_path:
        ck.write(checkpoint_path)
    return ck


def run_sharded(name: str, lo: int, hi: int, shards: int, **kwargs) -> Checkpoint:
    """Partition [lo, hi] into contiguous sub-ranges, scan each, merge.

    Hits are identical to a single-range run for any shard count.
    """
    if shards < 1:
        raise DomainError("shards must be >= 1")
    bounds = []
    width = (hi - lo + 1 + shards - 1) // shards
    a = lo
    while a <= hi:
        b = min(a + width - 1, hi)
        bounds.append((a, b))
        a = b + 1
    merged = Checkpoint(campaign=name, lo=lo, hi=hi, last_p=hi)
    for a, b in bounds:
        part = run_campaign(name, a, b, **kwargs)
        merged.hits.extend(part.hits)
        merged.scanned += part.scanned
        merged.elapsed_s += part.elapsed_s
    merged.hits.sort(key=lambda h: (h[1], h[0]) if isinstance(h, tuple) else (h, 0))
    return merged


@dataclass(frozen=True)
class VerifyReport:
    campaign: str
    status: str            # pass | fail | inconclusive
    expected: tuple
    found: tuple
    missing: tuple = ()
    unexpected: tuple = ()


def verify_expected(name: str, ck: Checkpoint) -> VerifyReport:
    """Compare a completed checkpoint against the campaign's desk-scale
    fixture; a checkpoint not covering the fixture range is inconclusive."""
    campaign = CAMPAIGNS[name]
    if campaign.expected is None:
        raise DomainError(f"campaign {name!r} has no expected-hit fixture")
    flo, fhi, fhits, mode = campaign.expected

    def hit_p(h):
        return h[1] if isinstance(h, tuple) else h

    if ck.lo > flo or ck.last_p < fhi:
        return VerifyReport(name, "inconclusive", tuple(fhits),
                            tuple(ck.hits))
    found = tuple(h for h in ck.hits if flo <= hit_p(h) <= fhi)
    fset, gset = set(fhits), set(found)
    if mode == "contains":
        missing = tuple(sorted(fset - gset))
        status = "pass" if not missing else "fail"
        return VerifyReport(name, status, tuple(fhits), found, missing, ())
    missing = tuple(sorted(fset - gset))
    unexpected = tuple(sorted(gset - fset))
    status = "pass" if not missing and not unexpected else "fail"
    return VerifyReport(name, status, tuple(fhits), found, missing, unexpected)

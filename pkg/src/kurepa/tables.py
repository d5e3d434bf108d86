"""Reference tables and their reproduction.

The fixtures below are published reference values for the sequences this
library computes (cross-checked against OEIS A003422, A000110, A000587,
A007540, A309483 and exact recomputation). A few cells in the published
tables carry evident misprints; those are kept verbatim here and flagged in
ERRATA with the recomputed value, so reproduction reports them as known
diffs instead of silently "fixing" the reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import config, exact, residues
from .errors import DomainError

__all__ = [
    "TABLE1",
    "QUOTIENTS",
    "GERTSCH",
    "AGOH_GIUGA",
    "BELL_WILSON",
    "FACTORIZATIONS",
    "ERRATA",
    "TABLE_NAMES",
    "CellDiff",
    "TableReport",
    "reproduce_table",
]

# p -> (!p, !p mod p, Bell_{p-1}, Bell_{p-1} mod p)
TABLE1 = {
    3: (4, 1, 2, 2),
    5: (34, 4, 15, 0),
    7: (874, 6, 203, 0),
    11: (4_037_914, 1, 115_975, 2),
    13: (522_956_314, 10, 4_213_597, 11),
    17: (22_324_392_524_314, 13, 10_480_142_147, 14),
}

# p -> (W_p, L_p, Gertsch_p, H_p)
QUOTIENTS = {
    3: (1, 0, 1, Fraction(0)),
    5: (5, 13, 4, Fraction(66, 5)),
    7: (103, 1356, 96, Fraction(1357)),
}

# p -> Gertsch quotient (OEIS A309483)
GERTSCH = {
    3: 1,
    5: 4,
    7: 96,
    11: 356540,
    13: 39903286,
    17: 1312583081304,
    19: 356826497344324,
    23: 51202108292508282304,
    29: 10903333036235662560405182340,
    31: 8851961858819132893480466080328,
    37: 10341369256681418109100257759613689061054,
    41: 20410983764150196478167108200311379711212644128,
    43: 33471988248845076246704814844693140092683344053436,
    47: 119680095889593902169611731792572420181399897412939250680,
    53: 1551704320329449188553505544936791636242289216222193046404083939884,
    59: 40539189508131106145581275089019179146420416222458964156217471022804657603628,
    61: 138722328581443601889768771573817998285456423842798757803191931619802810589153798,
}

# p -> AG_p as printed (reduced rational strings)
AGOH_GIUGA = {
    3: "1/2",
    5: "1/6",
    7: "1/6",
    11: "1/6",
    13: "-37/210",
    17: "-211/30",
    19: "2311/42",
    23: "37153/6",
    29: "-818946931/30",
    31: "277930363757/422",
    37: "-711223555487930419/51870",
    41: "-6367871182840222481/330",
    43: "35351107998094669831/42",
    47: "12690449182849194963361/6",
    53: "-15116334304443206742413679091/30",
    59: "1431925649981017658678758915153153/6",
    61: "-19921854762028779869513196624259348280501/930930",
    67: "21979104807855756030621185500775109585700001/966",
    71: "2120255418779301462015162920814890260724481131/66",
    73: "-79834999474930741238880510200562566647705319203319743/1919190",
    79: "5251219817410137067027582728475216120154422473068360551/42",
    83: "20204989749218624540038006142003251809731759368316306203393/6",
    89: "-14735129086224915820174285663138335318491576130022793756145167309813/690",
    97: "-2181447933992438279356677609379631274979834581330517877841636427010831632473617/46410",
}

# p -> (Bell_{p-1} mod p, W_p mod p, sum column; "F" marks a fractional cell)
_BW = """\
3 2 1 F;5 0 0 3;7 0 5 6;11 2 1 F;13 11 0 F;17 14 5 F;19 10 2 F;23 22 8 F;
29 18 18 F;31 3 19 F;37 6 7 F;41 5 16 F;43 17 13 F;47 19 6 F;53 14 34 F;
59 29 27 F;61 23 56 F;67 66 12 F;71 69 69 F;73 56 11 F;79 21 73 F;83 28 20 F;
89 77 70 F;97 81 70 F;101 14 72 F;103 51 57 F;107 44 1 F;109 66 30 F;
113 110 95 F;127 57 71 F;131 82 119 F;137 94 56 F;139 135 67 F;149 83 94 F;
151 11 86 F;157 132 151 F;163 5 108 F;167 31 21 F;173 105 106 F;179 30 48 F;
181 171 72 F;191 105 159 F;193 166 35 F;197 10 147 F;199 123 118 F;
211 131 173 F;223 43 180 F;227 226 113 F;229 51 131 F;233 70 169 F;
239 13 107 F;241 129 196 F;251 61 214 F;257 148 177 F;263 53 73 F;
269 17 121 F;271 57 170 F;277 8 25 F;281 219 277 F;283 155 164 F;
293 265 231 F;307 199 271 F;311 49 259 F;313 300 288 F;317 206 110 F;
331 252 164 F;337 102 41 F;347 135 235 F;349 344 8 F;353 76 151 F;
359 91 184 F;367 183 100 F;373 3 224 F;379 74 133 F;383 102 122 F;
389 99 234 F;397 153 219 F;401 184 235 F;409 385 151 F;419 119 375 F;
421 307 7 F;431 166 392 F;433 154 371 F;439 227 375 F;443 183 149 F;
449 166 412 F;457 182 246 F;461 421 55 F;463 42 417 F;467 4 77 F;
479 284 299 F;487 258 89 F;491 236 318 F;499 131 422 F;503 246 458 F;
509 369 379 F;521 165 170 F;523 513 10 F;541 280 194 F;547 169 397 F;
557 391 96 F;563 107 0 F"""

# p -> (bell mod p, wilson mod p, sum-or-"Fractional")
BELL_WILSON = {}
for _row in _BW.replace("\n", "").split(";"):
    _p, _b, _w, _s = _row.split()
    BELL_WILSON[int(_p)] = (
        int(_b), int(_w), "Fractional" if _s == "F" else int(_s))

# n -> factorization of !n - 1 as ((prime, exponent), ...)
FACTORIZATIONS = {
    3: ((3, 1),),
    4: ((3, 2),),
    5: ((3, 1), (11, 1)),
    6: ((3, 2), (17, 1)),
    7: ((3, 2), (97, 1)),
    8: ((3, 4), (73, 1)),
    9: ((3, 2), (11, 1), (467, 1)),
    10: ((3, 2), (131, 1), (347, 1)),
    11: ((3, 2), (11, 1), (40787, 1)),
    12: ((3, 2), (11, 1), (443987, 1)),
    13: ((3, 2), (11, 2), (23, 1), (20879, 1)),
    14: ((3, 2), (11, 1), (821, 1), (83047, 1)),
    15: ((3, 2), (11, 1), (2789, 1), (340183, 1)),
    16: ((3, 2), (11, 1), (107, 1), (509, 1), (259949, 1)),
    17: ((3, 2), (11, 1), (225498914387, 1)),
    18: ((3, 2), (11, 1), (163, 1), (20143, 1), (1162943, 1)),
    19: ((3, 2), (11, 1), (19727, 1), (3471827581, 1)),
    20: ((3, 2), (11, 1), (29, 1), (43, 1), (1621, 1), (641751001, 1)),
    21: ((3, 2), (11, 1), (53, 1), (67, 1), (662348503367, 1)),
    22: ((3, 2), (11, 1), (877, 1), (3203, 1), (41051, 1), (4699727, 1)),
    23: ((3, 2), (11, 1), (11895484822660898387, 1)),
    24: ((3, 2), (11, 1), (139, 1), (2129333, 1), (922459185301, 1)),
    25: ((3, 2), (11, 1), (37, 2), (29131483, 1), (163992440081, 1)),
    26: ((3, 2), (11, 1), (454823, 1), (519472957, 1), (690821017, 1)),
    27: ((3, 2), (11, 1), (107, 1), (173, 1), (7823, 1), (12227, 1),
         (1281439, 1), (1867343, 1)),
    28: ((3, 2), (11, 1), (431363, 1), (2882477797, 1), (91865833117, 1)),
    29: ((3, 2), (11, 1), (191, 1), (47793258077, 1), (349882390108241, 1)),
    30: ((3, 2), (11, 1), (37, 1), (283, 1), (5087, 1),
         (1736655143086866180331, 1)),
}

# Known misprints in the reference tables, confirmed by exact recomputation;
# reproduction treats a diff matching the corrected value as expected.
ERRATA = {
    ("agoh_giuga", 31): {
        "printed": "277930363757/422",
        "corrected": "277930363757/462",
        "note": "denominator misprint; von Staudt-Clausen gives "
                "denom(B_30)/31 = 14322/31 = 462",
    },
    ("agoh_giuga", 71): {
        "printed": "2120255418779301462015162920814890260724481131/66",
        "corrected": "21202554187793901462015162920814890260724481131/66",
        "note": "numerator is missing one digit",
    },
    ("factorizations", 21): {
        "printed": ((3, 2), (11, 1), (53, 1), (67, 1), (662348503367, 1)),
        "corrected": ((3, 2), (11, 2), (53, 1), (67, 1), (662348503367, 1)),
        "note": "exponent misprint: !21 - 1 carries 11^2",
    },
}

TABLE_NAMES = ("table1", "quotients", "gertsch", "agoh_giuga",
               "bell_wilson", "factorizations")


@dataclass(frozen=True)
class CellDiff:
    row: object
    column: str
    reference: object
    computed: object
    known: bool = False
    note: str = ""


@dataclass
class TableReport:
    name: str
    rows: list = field(default_factory=list)
    diffs: list = field(default_factory=list)
    extra_rows: list = field(default_factory=list)

    @property
    def unknown_diffs(self) -> list:
        return [d for d in self.diffs if not d.known]

    @property
    def ok(self) -> bool:
        return not self.unknown_diffs


def _diff(report: TableReport, row, column, reference, computed):
    if reference == computed:
        return
    err = ERRATA.get((report.name, row))
    known = bool(err) and computed == err["corrected"]
    report.diffs.append(CellDiff(row, column, reference, computed, known,
                                 err["note"] if known else ""))


def _reproduce_table1() -> TableReport:
    rep = TableReport("table1")
    for p, (k, km, b, bm) in TABLE1.items():
        ck = exact.left_factorial(p)
        cb = exact.bell_exact(p - 1)
        row = (p, ck, ck % p, cb, cb % p)
        rep.rows.append(row)
        _diff(rep, p, "left_factorial", k, ck)
        _diff(rep, p, "left_factorial_mod", km, ck % p)
        _diff(rep, p, "bell", b, cb)
        _diff(rep, p, "bell_mod", bm, cb % p)
    return rep


def _reproduce_quotients() -> TableReport:
    rep = TableReport("quotients")
    for p, (w, l, g, h) in QUOTIENTS.items():
        rec = exact.quotient_record(p)
        rep.rows.append((p, rec.wilson, rec.lerch, rec.gertsch, rec.h))
        _diff(rep, p, "wilson", w, rec.wilson)
        _diff(rep, p, "lerch", Fraction(l), rec.lerch)
        _diff(rep, p, "gertsch", g, rec.gertsch)
        _diff(rep, p, "h", h, rec.h)
    return rep


def _reproduce_gertsch() -> TableReport:
    rep = TableReport("gertsch")
    for p, ref in GERTSCH.items():
        g = exact.gertsch_quotient_exact(p)
        rep.rows.append((p, g))
        _diff(rep, p, "gertsch", ref, g)
    return rep


def _reproduce_agoh_giuga() -> TableReport:
    rep = TableReport("agoh_giuga")
    for p, ref in AGOH_GIUGA.items():
        ag = exact.agoh_giuga_exact(p)
        computed = f"{ag.numerator}/{ag.denominator}"
        rep.rows.append((p, computed))
        _diff(rep, p, "ag", ref, computed)
    return rep


def _reproduce_bell_wilson(hi: int = 600) -> TableReport:
    from .modmath import iter_primes
    rep = TableReport("bell_wilson")
    for p in iter_primes(3, hi):
        b = int(residues.bell_mod(p - 1, p))
        w = int(residues.wilson_quotient_mod(p))
        s = residues.bell_wilson_sum_mod(p)
        cell = "Fractional" if s is residues.FRACTIONAL else int(s)
        row = (p, b, w, cell)
        rep.rows.append(row)
        if p in BELL_WILSON:
            rb, rw, rs = BELL_WILSON[p]
            _diff(rep, p, "bell_mod", rb, b)
            _diff(rep, p, "wilson_mod", rw, w)
            _diff(rep, p, "sum", rs, cell)
        else:
            rep.extra_rows.append(row)
    return rep


def _reproduce_factorizations(n_max: int = 24,
                              budget: int = config.FACTOR_BUDGET) -> TableReport:
    from .factorizer import factorize
    from .exact import left_factorial
    rep = TableReport("factorizations")
    for n in range(3, n_max + 1):
        f = factorize(left_factorial(n) - 1, budget=budget)
        computed = tuple(f.factors)
        rep.rows.append((n, computed, f.complete))
        if not f.complete:
            rep.diffs.append(CellDiff(n, "factors", FACTORIZATIONS[n],
                                      computed, False, "budget exhausted"))
            continue
        _diff(rep, n, "factors", FACTORIZATIONS[n], computed)
    return rep


def reproduce_table(name: str, **kwargs) -> TableReport:
    """Recompute a reference table and diff it cell by cell.

    Known misprints (ERRATA) appear as diffs with known=True; a report is ok
    when every diff is a known one.
    """
    if name == "table1":
        return _reproduce_table1()
    if name == "quotients":
        return _reproduce_quotients()
    if name == "gertsch":
        return _reproduce_gertsch()
    if name == "agoh_giuga":
        return _reproduce_agoh_giuga()
    if name == "bell_wilson":
        return _reproduce_bell_wilson(**kwargs)
    if name == "factorizations":
        return _reproduce_factorizations(**kwargs)
    raise DomainError(f"unknown table {name!r}; known: {', '.join(TABLE_NAMES)}")

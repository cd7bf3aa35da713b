"""
Suite Runner Module
Dispatches the verification suites of `klr verify` and collects their checks.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Any, Callable, Dict, List, Optional, Sequence as _Seq
import hashlib
import json
import logging

import numpy as np

from src.datum import BorcherdsCartanDatum
from src.errors import KLRError, UnknownSuite
from src.klr_core import (
    KLRAlgebra,
    center_check,
    centralizer_gdim,
    divided_idempotent,
    elementary_symmetric,
    gdim_center,
    gdim_divided_corner,
    random_element,
    rank_gdim_divided,
    serre_character_failures,
)
from src.polyrep import MultiPoly, PolyVector, verify_relations
from src.qgroup import commutation_check, pairing_rows, radical_failures, symmetry_failures
from src.reptheory import (
    Character,
    char_V_real,
    character_of,
    characters_independent,
    delta_character,
    empty_character,
    epsilon_i,
    head_is_trivial,
    hom_dimension,
    induce_characters,
    induced_trivials,
    lbar,
    mackey_sides,
    outer_tensor,
    restrict_module,
    span_of_basis,
    submodule_lattice_probe,
    trivial_V,
)
from src.wordcomb import DividedSequence, Weight, format_sequence, sequences_of_weight, weights_up_to
from utils.checkpoint_manager import CheckpointManager
from utils.config import RunConfig

logger = logging.getLogger(__name__)

SUITES = ("polyrep", "basis-oracle", "serre", "pairing", "modules", "mackey", "center")


def check_row(name: str, ok: bool, detail: Any = None) -> Dict:
    return {"check": name, "ok": bool(ok), "detail": detail}


def _label(weight: Optional[Weight]) -> str:
    return str(weight) if weight is not None and weight.ht else "0"


@dataclass
class SuiteResult:
    suite: str
    rows: List[Dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row.get("ok", False) for row in self.rows)

    @property
    def failures(self) -> List[Dict]:
        return [row for row in self.rows if not row.get("ok", False)]

    def to_dict(self) -> Dict:
        return {"suite": self.suite, "ok": self.ok, "checked": len(self.rows), "failed": len(self.failures)}


def datum_fingerprint(datum: BorcherdsCartanDatum) -> str:
    text = json.dumps(datum.to_dict(), sort_keys=True)
    return hashlib.sha1(text.encode("utf-8")).hexdigest()[:10]


# work units: top-level so worker processes can pickle them

def _polyrep_unit(datum: BorcherdsCartanDatum, weight: Weight, test_degree: int) -> List[Dict]:
    report = verify_relations(datum, weight, test_degree)
    rows = [check_row(f"relations on {weight}", report.passed, f"{len(report.checks)} instances")]
    rows += [check_row(f"{c.relation} on {c.sequence}", False, c.counterexample) for c in report.failures]
    return rows


def _pairing_unit(datum: BorcherdsCartanDatum, weight: Weight, cap: int) -> List[Dict]:
    rows = [dict(row, ok=row["equalToCap"] is not None) for row in pairing_rows(datum, weight, cap)]
    failures = symmetry_failures(datum, weight)
    rows.append(check_row(f"form symmetry on {weight}", not failures, failures[:3] or None))
    return rows


class SuiteRunner:
    """
    Runs the named verification suites for one datum and configuration.

    Sweeps over weights fan out to worker processes when width > 1, and consult the
    checkpoint store first when one is configured.
    """

    def __init__(self, datum: BorcherdsCartanDatum, config: RunConfig,
                 checkpoints: Optional[CheckpointManager] = None):
        self.datum = datum
        self.config = config
        self.checkpoints = checkpoints
        if checkpoints is None and config.checkpoint_dir:
            self.checkpoints = CheckpointManager(config.checkpoint_dir)
        self.fingerprint = datum_fingerprint(datum)

    def run(self, suite: str) -> SuiteResult:
        """
        Run a single suite.

        Args:
            suite: one of SUITES

        Returns:
            SuiteResult with one row per check

        Raises:
            UnknownSuite: the name is not a suite
        """
        logger.info(f"Running suite: {suite}")
        if suite == "polyrep":
            rows = self._run_polyrep()
        elif suite == "basis-oracle":
            rows = self._run_basis_oracle()
        elif suite == "serre":
            rows = self._run_serre()
        elif suite == "pairing":
            rows = self._run_pairing()
        elif suite == "modules":
            rows = self._run_modules()
        elif suite == "mackey":
            rows = self._run_mackey()
        elif suite == "center":
            rows = self._run_center()
        else:
            raise UnknownSuite(f"Unknown suite {suite!r}; expected one of {SUITES}")
        result = SuiteResult(suite, rows)
        logger.info(f"Suite {suite}: {len(result.rows)} checks, {len(result.failures)} failures")
        for row in result.failures:
            logger.warning(f"Suite {suite} failed check: {row.get('check') or row.get('pair')}")
        return result

    def _weights(self, limit: Optional[int] = None) -> List[Weight]:
        top = self.config.max_ht if limit is None else min(limit, self.config.max_ht)
        return weights_up_to(self.datum.indices, top)

    def _fan_out(self, func: Callable, jobs: List[tuple], keys: List[str]) -> List[Dict]:
        """Run func(*job) per job, reusing checkpointed rows and saving new ones."""
        results: Dict[int, List[Dict]] = {}
        pending = []
        for index, key in enumerate(keys):
            cached = self.checkpoints.load(key) if self.checkpoints else None
            if cached is not None:
                results[index] = cached["rows"]
            else:
                pending.append(index)
        if pending:
            logger.info(f"{len(pending)} of {len(jobs)} units to compute, {len(jobs) - len(pending)} resumed")
        if self.config.width > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=self.config.width) as executor:
                futures = {index: executor.submit(func, *jobs[index]) for index in pending}
                computed = {index: future.result() for index, future in futures.items()}
        else:
            computed = {index: func(*jobs[index]) for index in pending}
        for index, rows in computed.items():
            results[index] = rows
            if self.checkpoints:
                self.checkpoints.save(keys[index], {"rows": rows})
        return [row for index in range(len(jobs)) for row in results[index]]

    # suites

    def _run_polyrep(self) -> List[Dict]:
        weights = self._weights()
        jobs = [(self.datum, w, self.config.test_degree) for w in weights]
        keys = [f"polyrep-{self.fingerprint}-{w}-d{self.config.test_degree}" for w in weights]
        return self._fan_out(_polyrep_unit, jobs, keys)

    def _run_pairing(self) -> List[Dict]:
        weights = self._weights()
        jobs = [(self.datum, w, self.config.cap) for w in weights]
        keys = [f"pairing-{self.fingerprint}-{w}-cap{self.config.cap}" for w in weights]
        return self._fan_out(_pairing_unit, jobs, keys)

    def _random_vector(self, seq, rng: np.random.Generator) -> PolyVector:
        n = len(seq)
        xexp = tuple(int(e) for e in rng.integers(0, 3, size=n))
        yexp = tuple(int(e) for e in rng.integers(0, 2, size=n))
        return PolyVector.single(seq, MultiPoly.monomial(xexp, yexp, Fraction(int(rng.integers(1, 4)))))

    def _random_corner(self, rng: np.random.Generator, weights: List[Weight], count: int):
        weight = weights[int(rng.integers(len(weights)))]
        seqs = sequences_of_weight(weight)
        return [seqs[int(rng.integers(len(seqs)))] for _ in range(count)]

    def _run_basis_oracle(self) -> List[Dict]:
        rng = np.random.default_rng(self.config.seed)
        algebra = KLRAlgebra(self.datum)
        mirror = KLRAlgebra(self.datum, strategy="back")
        weights = self._weights()
        rows = []

        failures = []
        for _ in range(self.config.samples):
            s, m, t = self._random_corner(rng, weights, 3)
            a = random_element(algebra, m, t, rng)
            b = random_element(algebra, s, m, rng)
            v = self._random_vector(s, rng)
            if algebra.act_on_polyrep(algebra.mul(a, b), v) != algebra.act_on_polyrep(a, algebra.act_on_polyrep(b, v)):
                failures.append(f"{a.render()} | {b.render()}")
        rows.append(check_row("mul agrees with the polynomial action", not failures, failures[:1] or None))

        failures, psi_failures, strategy_failures = [], [], []
        for _ in range(2 * self.config.samples):
            s, m1, m2, t = self._random_corner(rng, weights, 4)
            a = random_element(algebra, m2, t, rng)
            b = random_element(algebra, m1, m2, rng)
            c = random_element(algebra, s, m1, rng)
            ab = algebra.mul(a, b)
            if algebra.mul(ab, c) != algebra.mul(a, algebra.mul(b, c)):
                failures.append(f"{a.render()} | {b.render()} | {c.render()}")
            if algebra.psi(ab) != algebra.mul(algebra.psi(b), algebra.psi(a)) or algebra.psi(algebra.psi(a)) != a:
                psi_failures.append(f"{a.render()} | {b.render()}")
            if mirror.mul(a, b) != ab:
                strategy_failures.append(f"{a.render()} | {b.render()}")
        rows.append(check_row("mul is associative", not failures, failures[:1] or None))
        rows.append(check_row("psi is an anti-involution", not psi_failures, psi_failures[:1] or None))
        rows.append(check_row("straightening strategies agree", not strategy_failures, strategy_failures[:1] or None))

        for weight in self._weights(3):
            for seq in sequences_of_weight(weight):
                broken = algebra.relation_failures(seq)
                if broken:
                    rows.append(check_row(f"generator relations on {format_sequence(seq)}", False, broken[:3]))
        rows.append(check_row("generator relations", True, f"weights up to height {min(3, self.config.max_ht)}"))

        cap = min(self.config.cap, 12)
        for label in self.datum.index_class.i_plus:
            for n in range(1, min(3, self.config.max_ht) + 1):
                shape = DividedSequence(((label, n),))
                try:
                    divided_idempotent(shape, algebra)
                    rows.append(check_row(f"e*e = e for {shape}", True))
                except KLRError as e:
                    rows.append(check_row(f"e*e = e for {shape}", False, str(e)))
            for shape in self._divided_shapes(label):
                for dst in sequences_of_weight(shape.weight):
                    formula = gdim_divided_corner(shape, dst, self.datum, cap)
                    oracle = rank_gdim_divided(shape, dst, algebra, cap)
                    comparison = formula.compare(oracle)
                    rows.append(check_row(f"gdim 1_{{{shape}}} R 1_{{{format_sequence(dst)}}}", comparison.equal,
                                          {"formula": str(formula), "ranks": str(oracle)}))
        return rows

    def _divided_shapes(self, label: str) -> List[DividedSequence]:
        limit = min(3, self.config.max_ht)
        shapes = [DividedSequence(((label, n),)) for n in range(2, limit + 1)]
        if limit >= 3:
            shapes += [DividedSequence(((label, 2), (other, 1))) for other in self.datum.indices if other != label]
        return shapes

    def _run_serre(self) -> List[Dict]:
        rows = []
        for i in self.datum.index_class.i_plus:
            for j in self.datum.indices:
                if j == i:
                    continue
                a_ij = self.datum.a(i, j)
                if a_ij < -2 or 2 - a_ij > self.config.max_ht:
                    logger.info(f"Skipping Serre pair ({i}, {j}): height {2 - a_ij} over the guard")
                    continue
                failures = serre_character_failures(i, j, self.datum, self.config.cap)
                rows.append(check_row(f"Serre characters ({i}, {j})", not failures, failures or None))
                failures = radical_failures(i, j, self.datum, self.config.cap, self.config.max_ht)
                rows.append(check_row(f"Serre element ({i}, {j}) in the radical", not failures, failures[:3] or None))
                if a_ij == 0:
                    rows.append(check_row(f"f_{i} f_{j} = f_{j} f_{i} under the form",
                                          commutation_check(i, j, self.datum, self.config.cap)))
        for i in self.datum.index_class.i_minus:
            for j in self.datum.indices:
                if self.datum.bilinear(i, j) == 0 and i != j:
                    rows.append(check_row(f"f_{i} f_{j} = f_{j} f_{i} under the form",
                                          commutation_check(i, j, self.datum, self.config.cap)))
        return rows

    def _run_modules(self) -> List[Dict]:
        rows = []
        max_n = self.config.max_n
        for i in self.datum.index_class.i_minus:
            irreducibles = []
            for n in range(1, min(4, max_n) + 1):
                rows += self._lbar_checks(i, n)
                irreducibles.append(character_of(trivial_V(self.datum, i, n)))
            rows.append(check_row(f"characters of V({i}^n) independent",
                                  characters_independent(irreducibles)))
            for n in range(1, max_n):
                for m in range(1, max_n - n + 1):
                    rows += self._induced_checks(i, n, m)
            rows += self._delta_checks(i)
        for i in self.datum.index_class.i_plus:
            for n in range(1, min(4, max_n) + 1):
                value = char_V_real(self.datum, i, n).get((i,) * n)
                rows.append(check_row(f"Ch V({i}^{n}) is bar-symmetric", value.bar() == value, str(value)))
        return rows

    def _lbar_checks(self, i: str, n: int) -> List[Dict]:
        module = lbar(self.datum, i, n, guard=self.config.max_n)
        probe = submodule_lattice_probe(module)
        expected_max = span_of_basis(module, range(1, module.dim))
        expected_min = span_of_basis(module, [module.dim - 1])
        name = module.name
        return [
            check_row(f"dim {name} = {n}!", module.dim == factorial(n), module.dim),
            check_row(f"dots act by zero on {name}", all(not any(map(any, m)) for m in module.dots.values())),
            check_row(f"unique maximal submodule of {name}",
                      probe.maximal == [expected_max] if n > 1 else probe.maximal == [()]),
            check_row(f"unique minimal submodule of {name}", probe.minimal == [expected_min]),
            check_row(f"head of {name} is trivial", head_is_trivial(module, probe.maximal[0])),
        ]

    def _induced_checks(self, i: str, n: int, m: int) -> List[Dict]:
        module = induced_trivials(self.datum, i, n, m, guard=self.config.max_n)
        probe = submodule_lattice_probe(module)
        name = module.name
        shuffled = induce_characters(character_of(trivial_V(self.datum, i, n)),
                                     character_of(trivial_V(self.datum, i, m)), self.datum)
        whole = trivial_V(self.datum, i, n + m)
        restricted = restrict_module(whole, (n, m))
        tensor = outer_tensor(trivial_V(self.datum, i, n), trivial_V(self.datum, i, m))
        return [
            check_row(f"dim {name} = C({n + m},{n})", module.dim == comb(n + m, n), module.dim),
            check_row(f"unique maximal submodule of {name} has codimension 1",
                      len(probe.maximal) == 1 and len(probe.maximal[0]) == module.dim - 1),
            check_row(f"head of {name} is trivial", head_is_trivial(module, probe.maximal[0])),
            check_row(f"Ch {name} is the shuffle product", character_of(module) == shuffled),
            check_row(f"Hom({name}, V({i}^{n + m})) is one-dimensional", hom_dimension(module, whole) == 1),
            check_row(f"Res V({i}^{n + m}) is the outer tensor of trivials",
                      hom_dimension(restricted, tensor) == 1 and hom_dimension(tensor, restricted) == 1
                      and character_of(restricted) == character_of(tensor)),
        ]

    def _delta_checks(self, i: str) -> List[Dict]:
        rows = []
        chars: List[Character] = [character_of(lbar(self.datum, i, n)) for n in range(1, min(3, self.config.max_n) + 1)]
        chars += [character_of(induced_trivials(self.datum, i, 1, 1))] if self.config.max_n >= 2 else []
        for ch in chars:
            top = epsilon_i(ch, i)
            for n in range(top + 1):
                stripped = delta_character(ch, i, n)
                rows.append(check_row(f"epsilon after Delta_{i}^{n} on {ch.weight}",
                                      epsilon_i(stripped, i) == top - n))
        others = [empty_character()] + [char_V_real(self.datum, r, 1) for r in self.datum.index_class.i_plus]
        for ch_n in others:
            if epsilon_i(ch_n, i) != 0:
                continue
            for n in range(1, 3):
                shuffled = induce_characters(ch_n, character_of(trivial_V(self.datum, i, n)), self.datum)
                rows.append(check_row(f"Delta_{i}^{n} undoes the shuffle with V({i}^{n}) on {_label(ch_n.weight)}",
                                      delta_character(shuffled, i, n) == ch_n))
        return rows

    def _basic_characters(self, max_ht: int) -> List[Character]:
        chars = []
        for label in self.datum.indices:
            for n in range(1, max_ht):
                if self.datum.is_real(label):
                    chars.append(char_V_real(self.datum, label, n))
                else:
                    chars.append(character_of(trivial_V(self.datum, label, n)))
        return chars

    def _run_mackey(self) -> List[Dict]:
        rows = []
        twisted = False
        basics = self._basic_characters(self.config.max_ht)
        for ch_m, ch_n in product(basics, repeat=2):
            total = ch_m.weight + ch_n.weight
            if total.ht > self.config.max_ht:
                continue
            labels = [label for label, _ in total.items]
            for counts in product(*(range(c + 1) for _, c in total.items)):
                nu = Weight.from_counts(dict(zip(labels, counts)))
                sides = mackey_sides(ch_m, ch_n, nu, total - nu, self.datum)
                twisted = twisted or any(shift != 0 for _, shift in sides.twists)
                rows.append(check_row(f"Mackey ({ch_m.weight}) x ({ch_n.weight}) at ({_label(nu)}; {_label(total - nu)})",
                                      sides.equal, {"twists": sides.twists}))
        rows.append(check_row("a nontrivial Mackey twist was exercised", twisted))
        return rows

    def _run_center(self) -> List[Dict]:
        rows = []
        algebra = KLRAlgebra(self.datum)
        for weight in self._weights(3):
            rows.append(check_row(f"1 is central in R({weight})", center_check({}, weight, algebra)))
            for label, count in weight.items:
                for m in range(1, count + 1):
                    sym = {label: elementary_symmetric(m, count)}
                    rows.append(check_row(f"e_{m}({label}) is central in R({weight})", center_check(sym, weight, algebra)))
                if count >= 2:
                    lone = {label: {(1,) + (0,) * (count - 1): Fraction(1)}}
                    rows.append(check_row(f"x_1({label}) is not central in R({weight})",
                                          not center_check(lone, weight, algebra)))
        cap = min(self.config.cap, 12)
        for label in self.datum.indices:
            for n in range(1, min(3, self.config.max_ht) + 1):
                weight = Weight.from_counts({label: n})
                product_form = gdim_center(weight, self.datum, cap)
                kernel = centralizer_gdim(weight, algebra, cap)
                rows.append(check_row(f"gdim Z(R({weight})) by linear algebra", product_form.compare(kernel).equal,
                                      {"product": str(product_form), "centralizer": str(kernel)}))
        return rows

    def run_all(self, suites: _Seq[str]) -> List[SuiteResult]:
        return [self.run(suite) for suite in suites]

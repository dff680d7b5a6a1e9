"""Seeded verification suites: each one replays a library identity on random
instances and reports every counterexample with a re-runnable serialization."""

from __future__ import annotations

import time

from .algebras import (
    AlgebraWithInvolution,
    TensorElement,
    algebra_to_json,
    build_algebra,
)
from .baserings import BaseRing
from .errors import HermformsError, InvalidEntry
from .forms import (
    base_diag_form,
    diag_form,
    extend_scalars,
    form_to_json,
    negate,
    tensor_quadratic,
    trace_transfer,
)
from .generators import CENTER_DS, InstanceGen, fixed_goldman_algebras
from .linalg import Matrix
from .localsymbols import square_class
from .pairing import (
    nil_kill,
    pfister_kill,
    phi_bc,
    psd_sign,
    star,
    sylvester_decompose,
)
from .scalars import rat
from .serialize import dumps, element_to_json, gram_to_json
from .signatures import is_psd, signature, signature_table
from .witt import (
    EQUAL,
    NOT_TORSION,
    is_hyperbolic,
    is_isotropic,
    plg_minimal_n,
    witt_equal,
)


class SuiteReport:
    """Outcome of one suite run; failures empty exactly when it passed."""

    __slots__ = ("name", "seed", "iterations", "failures", "elapsed_ms")

    def __init__(self, name, seed, iterations, failures, elapsed_ms):
        self.name = name
        self.seed = seed
        self.iterations = iterations
        self.failures = failures
        self.elapsed_ms = elapsed_ms

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "iterations": self.iterations,
            "failures": self.failures,
            "passed": self.passed,
        }


def _fail(failures, iteration, inputs, expected, observed):
    failures.append(
        {
            "iteration": iteration,
            "input": inputs,
            "expected": expected,
            "observed": str(observed),
        }
    )


def _inputs(A, **rest):
    out = {"algebra": algebra_to_json(A)}
    out.update(rest)
    return out


def _nonnil_ordering(gen, A):
    nil = set(A.nil_orderings())
    live = [P for P in A.base_ring.orderings() if P not in nil]
    return gen.rng.choice(live) if live else None


def _ordering_json(P):
    return P.key()


def _goldman_identities(seed, iters, budget):
    gen = InstanceGen(seed)
    algebras = fixed_goldman_algebras()
    failures = []
    for i in range(iters):
        A = algebras[i % len(algebras)]
        g = A.goldman_element()
        a, b = gen.raw_element(A), gen.raw_element(A)
        pair = TensorElement.from_pair
        checks = (
            ("g squared is one", g * g == pair(A, A.one(), A.one())),
            ("g exchanges simple tensors", g * pair(A, a, b) == pair(A, b, a) * g),
            ("sigma tensor sigma fixes g", g.sigma_sigma() == g),
            (
                "sandwich action is the reduced trace",
                g.sandwich(a) == A.scalar_elem(A.reduced_trace(a)),
            ),
        )
        info = _inputs(A, a=element_to_json(A, a), b=element_to_json(A, b))
        for label, ok in checks:
            if not ok:
                _fail(failures, i, info, label, "identity violated")
    return failures


def _signature_mult(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(twist_chance=0.25)
        q = gen.base_form()
        h = gen.herm_form(A)
        prod = tensor_quadratic(q, h)
        for P in A.base_ring.orderings():
            lhs = signature(prod, P)
            rhs = signature(q, P) * signature(h, P)
            if lhs != rhs:
                info = _inputs(A, quadratic=form_to_json(q), form=form_to_json(h),
                               ordering=_ordering_json(P))
                _fail(failures, i, info,
                      f"sign(q x h) = sign(q)*sign(h) = {rhs}", lhs)
    return failures


def _sign_bound(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(twist_chance=0.25)
        e = gen.symmetric_unit(A)
        h = diag_form(A, 1, [e])
        info = _inputs(A, element=element_to_json(A, e))
        for P in A.base_ring.orderings():
            s = signature(h, P)
            if abs(s) > A.deg:
                _fail(failures, i, info, f"|sign| <= deg = {A.deg}", s)
        P = _nonnil_ordering(gen, A)
        if P is None:
            continue
        m = gen.maximal_element(A, P, budget=budget)
        s = signature(diag_form(A, 1, [m]), P)
        if s != A.deg:
            _fail(failures, i, _inputs(A, element=element_to_json(A, m)),
                  f"maximal element has sign = deg = {A.deg}", s)
    return failures


def _nil_shapes():
    J = Matrix([[rat(0), rat(1)], [rat(-1), rat(0)]])
    QQ = BaseRing.rationals()
    sympl = AlgebraWithInvolution(QQ, k=2, u=J)
    split1 = build_algebra({"base": {"kind": "rationals"},
                            "coefficients": {"kind": "quaternion", "a": -1, "b": 2}})
    split2 = build_algebra({"base": {"kind": "rationals"},
                            "coefficients": {"kind": "quaternion", "a": 2, "b": 7}})
    ham = build_algebra({"base": {"kind": "rationals"},
                         "coefficients": {"kind": "quaternion", "a": -1, "b": -1}})
    twisted = ham.twist(ham.scalar_elem(ham.quat.i()))
    return [sympl, split1, split2, twisted]


def _nil_vanishing(seed, iters, budget):
    gen = InstanceGen(seed)
    shapes = _nil_shapes()
    failures = []
    for i in range(iters):
        A = shapes[i % len(shapes)]
        h = gen.herm_form(A)
        for P in A.nil_orderings():
            s = signature(h, P)
            if s != 0:
                _fail(failures, i,
                      _inputs(A, form=form_to_json(h), ordering=_ordering_json(P)),
                      "zero signature at a nil ordering", s)
    return failures


def _pairing_rank1(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(twist_chance=0.25)
        b = gen.symmetric_unit(A)
        c = gen.symmetric_unit(A)
        paired = star(diag_form(A, 1, [b]), diag_form(A, 1, [c])).form
        direct = phi_bc(A, b, c)
        lhs = dumps(gram_to_json(paired.algebra, paired.gram))
        rhs = dumps(gram_to_json(direct.algebra, direct.gram))
        if lhs != rhs:
            info = _inputs(A, b=element_to_json(A, b), c=element_to_json(A, c))
            _fail(failures, i, info, "star on rank-1 forms equals phi byte for byte",
                  "serializations differ")
    return failures


def _pairing_assoc(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(k_max=2, twist_chance=0.2)
        h1 = gen.herm_form(A, rank=gen.rng.randint(1, 2))
        h2 = gen.herm_form(A, rank=gen.rng.randint(1, 2))
        h3 = gen.herm_form(A, rank=gen.rng.randint(1, 2))
        lhs = tensor_quadratic(star(h1, h2).form, h3)
        rhs = tensor_quadratic(star(h3, h2).form, h1)
        verdict = witt_equal(lhs, rhs).verdict
        if verdict != EQUAL:
            info = _inputs(A, form1=form_to_json(h1), form2=form_to_json(h2),
                           form3=form_to_json(h3))
            _fail(failures, i, info, "(h1*h2) x h3 equals (h3*h2) x h1", verdict)
    return failures


def _pairing_base_change(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(k_max=2)
        choices = [2, 3, 5]
        if A.center_d is not None and A.center_d > 0:
            # extending by sqrt(d) would split the etale center
            choices = [m for m in choices if m != square_class(A.center_d)]
        m = gen.rng.choice(choices)
        h1 = gen.herm_form(A, rank=gen.rng.randint(1, 2))
        h2 = gen.herm_form(A, rank=gen.rng.randint(1, 2))
        ext_after = extend_scalars(star(h1, h2).form, m)
        ext_first = star(extend_scalars(h1, m), extend_scalars(h2, m)).form
        info = _inputs(A, form1=form_to_json(h1), form2=form_to_json(h2), m=m)
        if ext_after.rank != ext_first.rank:
            _fail(failures, i, info, "equal ranks after base change",
                  (ext_after.rank, ext_first.rank))
            continue
        t1 = signature_table(ext_after)
        t2 = signature_table(ext_first)
        if t1 != t2:
            _fail(failures, i, info, "equal signatures at both orderings", (t1, t2))
    return failures


def _psd_delta(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(twist_chance=0.2)
        P = _nonnil_ordering(gen, A)
        while P is None:
            A = gen.algebra(twist_chance=0.2)
            P = _nonnil_ordering(gen, A)
        delta = psd_sign(A, P, seed=gen.rng.randrange(1 << 16))
        b = gen.maximal_element(A, P, budget=budget)
        c = gen.maximal_element(A, P, budget=budget)
        phi1 = star(diag_form(A, 1, [c]), diag_form(A, 1, [c])).form
        phi2 = star(diag_form(A, 1, [b]), diag_form(A, 1, [c])).form
        if delta == -1:
            phi1, phi2 = negate(phi1), negate(phi2)
        info = _inputs(A, b=element_to_json(A, b), c=element_to_json(A, c),
                       ordering=_ordering_json(P), delta=delta)
        if not (is_psd(phi1, P) and is_psd(phi2, P)):
            _fail(failures, i, info, "delta-scaled pairings are PSD", "not PSD")
            continue
        lhs = tensor_quadratic(phi1, diag_form(A, 1, [b]))
        rhs = tensor_quadratic(phi2, diag_form(A, 1, [c]))
        verdict = witt_equal(lhs, rhs).verdict
        if verdict != EQUAL:
            _fail(failures, i, info, "phi1 x <b> equals phi2 x <c>", verdict)
    return failures


def _sylvester_instance(gen, A, P, budget):
    h = gen.herm_form(A, rank=gen.rng.randint(1, 3))
    c = gen.maximal_element(A, P, budget=budget)
    return h, c, sylvester_decompose(h, c, P)


def _sylvester(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(k_max=2, twist_chance=0.2)
        P = _nonnil_ordering(gen, A)
        while P is None:
            A = gen.algebra(k_max=2, twist_chance=0.2)
            P = _nonnil_ordering(gen, A)
        h, c, dec = _sylvester_instance(gen, A, P, budget)
        info = _inputs(A, form=form_to_json(h), c=element_to_json(A, c),
                       ordering=_ordering_json(P))
        if dec.verification != "witt":
            _fail(failures, i, info, "isometry verified by Witt equality",
                  dec.verification)
        ring = A.base_ring
        if not all(ring.sign_at(x, P) > 0 for x in dec.w + dec.u + dec.v):
            _fail(failures, i, info, "all decomposition entries positive at P",
                  dec.to_json(A))
    return failures


def _sylvester_counts(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(k_max=2, twist_chance=0.2)
        P = _nonnil_ordering(gen, A)
        while P is None:
            A = gen.algebra(k_max=2, twist_chance=0.2)
            P = _nonnil_ordering(gen, A)
        h, c, dec = _sylvester_instance(gen, A, P, budget)
        r, s = dec.counts()
        t = len(A.basis())
        expected_diff = t * signature(h, P)
        info = _inputs(A, form=form_to_json(h), c=element_to_json(A, c),
                       ordering=_ordering_json(P))
        if expected_diff % A.deg or (r - s) * A.deg != expected_diff:
            _fail(failures, i, info,
                  f"r - s = t*sign/deg = {expected_diff}/{A.deg}", r - s)
        if r + s != t * h.rank:
            _fail(failures, i, info, f"r + s = t*rank = {t * h.rank}", r + s)
    return failures


def _nil_kill(seed, iters, budget):
    gen = InstanceGen(seed)
    shapes = _nil_shapes()
    failures = []
    for i in range(iters):
        A = shapes[i % len(shapes)]
        P = gen.rng.choice(A.nil_orderings())
        h = gen.herm_form(A)
        info = _inputs(A, form=form_to_json(h), ordering=_ordering_json(P))
        try:
            nk = nil_kill(h, P, seed=gen.rng.randrange(1 << 16), budget=budget)
        except HermformsError as exc:
            _fail(failures, i, info, "nil_kill succeeds", repr(exc))
            continue
        if nk.q.rank != len(A.basis()):
            _fail(failures, i, info, f"dim q = {len(A.basis())}", nk.q.rank)
        if not is_psd(nk.q, P):
            _fail(failures, i, info, "q is PSD at P", nk.to_json())
        if nk.verification not in ("hyperbolic", "undecided"):
            _fail(failures, i, info, "q x h hyperbolic where decidable",
                  nk.verification)
    return failures


def _pfister_kill(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        A = gen.algebra(twist_chance=0.2)
        P = _nonnil_ordering(gen, A)
        while P is None:
            A = gen.algebra(twist_chance=0.2)
            P = _nonnil_ordering(gen, A)
        a = gen.maximal_element(A, P, budget=budget)
        b = gen.maximal_element(A, P, budget=budget)
        info = _inputs(A, a=element_to_json(A, a), b=element_to_json(A, b),
                       ordering=_ordering_json(P))
        try:
            pk = pfister_kill(A, a, b, P)
        except HermformsError as exc:
            _fail(failures, i, info, "pfister_kill succeeds", repr(exc))
            continue
        if pk.verification != "hyperbolic":
            _fail(failures, i, info,
                  "(<w> x <<r>>) x <a,-b> hyperbolic", pk.verification)
    return failures


def _trace_transfer_equiv(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        d = gen.rng.choice(CENTER_DS)
        A = AlgebraWithInvolution(BaseRing.rationals(), center_d=rat(d), k=1)
        h = gen.herm_form(A)
        lhs = is_hyperbolic(h).verdict
        rhs = is_hyperbolic(trace_transfer(h)).verdict
        if lhs != rhs:
            _fail(failures, i, _inputs(A, form=form_to_json(h)),
                  "form and its trace transfer are hyperbolic together",
                  (lhs, rhs))
    return failures


def _plg_shapes():
    QQ = BaseRing.rationals()
    return [
        AlgebraWithInvolution(QQ, k=1),
        build_algebra({"base": {"kind": "rationals"},
                       "center": {"kind": "quadratic", "d": -1}}),
        build_algebra({"base": {"kind": "rationals"},
                       "coefficients": {"kind": "quaternion", "a": -1, "b": -1}}),
        AlgebraWithInvolution(QQ, k=2),
        build_algebra({"base": {"kind": "product",
                                "factors": [{"kind": "rationals"}] * 2}}),
    ]


def _plg(seed, iters, budget):
    gen = InstanceGen(seed)
    shapes = _plg_shapes()
    failures = []
    for i in range(iters):
        A = shapes[i % len(shapes)]
        h = gen.torsion_form(A)
        n = plg_minimal_n(h)
        if not isinstance(n, int) or n > 4:
            _fail(failures, i, _inputs(A, form=form_to_json(h)),
                  "torsion form killed by at most 2^4", n)
        loud = gen.herm_form(A)
        if any(signature_table(loud).values()):
            verdict = plg_minimal_n(loud)
            if verdict != NOT_TORSION:
                _fail(failures, i, _inputs(A, form=form_to_json(loud)),
                      "nonzero signature reported as not torsion", verdict)
    return failures


ENTRY_POOL = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6]


def brute_isotropic(entries, height: int = 16) -> bool:
    """Meet-in-the-middle search for a nonzero rational zero of a diagonal
    form; complete for small dimensions at this height."""
    n = len(entries)
    if n <= 1:
        return False
    half = n // 2
    left, right = entries[:half], entries[half:]

    def sums(part):
        table = {}
        vecs = [[]]
        for _ in part:
            vecs = [v + [x] for v in vecs for x in range(-height, height + 1)]
        for v in vecs:
            total = sum(a * x * x for a, x in zip(part, v))
            nonzero = any(v)
            prev = table.get(total)
            if prev is None or (not prev and nonzero):
                table[total] = nonzero
        return table

    lt, rt = sums(left), sums(right)
    for total, nonzero in lt.items():
        other = rt.get(-total)
        if other is None:
            continue
        if nonzero or other:
            return True
    return False


def _witt_oracle_brute(seed, iters, budget):
    gen = InstanceGen(seed)
    failures = []
    for i in range(iters):
        n = gen.rng.randint(1, 4)
        entries = [rat(gen.rng.choice(ENTRY_POOL)) for _ in range(n)]
        q = base_diag_form(BaseRing.rationals(), entries)
        pred = is_isotropic(q)
        found = brute_isotropic([int(e) for e in entries])
        if pred != found:
            _fail(failures, i, {"entries": [str(e) for e in entries]},
                  f"invariant isotropy = brute search = {found}", pred)
    return failures


SUITES = {
    "goldman-identities": _goldman_identities,
    "signature-mult": _signature_mult,
    "sign-bound": _sign_bound,
    "nil-vanishing": _nil_vanishing,
    "pairing-rank1": _pairing_rank1,
    "pairing-assoc": _pairing_assoc,
    "pairing-base-change": _pairing_base_change,
    "psd-delta": _psd_delta,
    "sylvester": _sylvester,
    "sylvester-counts": _sylvester_counts,
    "nil-kill": _nil_kill,
    "pfister-kill": _pfister_kill,
    "trace-transfer-equiv": _trace_transfer_equiv,
    "plg": _plg,
    "witt-oracle-brute": _witt_oracle_brute,
}


def run_suite(name: str, seed: int = 0, iters: int = 50, budget: int = 200) -> SuiteReport:
    fn = SUITES.get(name)
    if fn is None:
        raise InvalidEntry(
            f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}"
        )
    start = time.perf_counter()
    failures = fn(seed, iters, budget)
    elapsed = int((time.perf_counter() - start) * 1000)
    return SuiteReport(name, seed, iters, failures, elapsed)

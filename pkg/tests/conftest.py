from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from holant_lab.cyclo import ZERO, ZETA, Cyc12
from holant_lab.instances import k4, k33, prism, theta

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def cyc12s(draw, nonzero: bool = False) -> Cyc12:
    coeffs = [draw(small_rationals) for _ in range(4)]
    z = Cyc12(*coeffs)
    if nonzero and not z:
        z = Cyc12(1)
    return z


def random_cyc(rng: random.Random, bound: int = 5, real: bool = False) -> Cyc12:
    def rat():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    if real:
        return Cyc12(rat())
    return sum((Cyc12(rat()) * ZETA**k for k in range(4)), ZERO)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture(params=["theta", "k4", "k33", "prism"])
def small_cubic(request):
    return {"theta": theta, "k4": k4, "k33": k33, "prism": prism}[request.param]()


def naive_holant(g, sig) -> Cyc12:
    """Direct sum over vertex assignments; independent of the histogram evaluator."""
    import itertools

    vals = [Cyc12(v) if not isinstance(v, Cyc12) else v for v in sig]
    total = ZERO
    for bits in itertools.product((0, 1), repeat=g.vertex_count):
        term = Cyc12(1)
        for u, v in g.edges:
            term = term * vals[bits[u] + bits[v]]
        total = total + term
    return total


def random_signature(rng: random.Random, arity: int, complex_ok: bool = True):
    from holant_lab.grid import SymSignature

    vals = []
    for _ in range(arity + 1):
        v = Cyc12(rng.randint(-3, 4))
        if complex_ok and rng.random() < 0.2:
            v = v + Cyc12(rng.randint(-2, 2)) * ZETA**3
        vals.append(v)
    return SymSignature(vals)


def random_grid(rng: random.Random, max_slots: int = 3, max_edges: int = 12, complex_ok: bool = True):
    """Closed bipartite grid with 0..max_slots unary SLOT generators and at most max_edges edges."""
    from holant_lab.grid import SLOT, SignatureGrid

    while True:
        rec_arities = []
        while True:
            k = rng.choice((1, 2, 3, 3))
            if sum(rec_arities) + k > max_edges:
                break
            rec_arities.append(k)
            if rng.random() < 0.25:
                break
        ports = [(r, p) for r, k in enumerate(rec_arities) for p in range(k)]
        if len(ports) >= 1:
            break
    rng.shuffle(ports)
    n_slots = rng.randint(0, min(max_slots, len(ports)))
    gens, edges = [], []
    for i in range(n_slots):
        gens.append(SLOT)
        edges.append(((i, 0), ports[i]))
    rest = ports[n_slots:]
    while rest:
        arity = 2 if len(rest) >= 2 and rng.random() < 0.8 else 1
        gi = len(gens)
        gens.append(random_signature(rng, arity, complex_ok))
        for p in range(arity):
            edges.append(((gi, p), rest.pop()))
    recs = [random_signature(rng, k, complex_ok) for k in rec_arities]
    return SignatureGrid(tuple(gens), tuple(recs), tuple(edges), ())


def to_complex(z: Cyc12) -> complex:
    """Image of z under zeta -> exp(i pi / 6); sqrt(3) is applied in 60-digit decimal
    arithmetic so that large cancelling coefficients stay accurate."""
    from decimal import Decimal, localcontext

    with localcontext() as ctx:
        ctx.prec = 60
        r3 = Decimal(3).sqrt()

        def dec(f: Fraction) -> Decimal:
            return Decimal(f.numerator) / Decimal(f.denominator)

        c0, c1, c2, c3 = z.coeffs
        re = dec(c0 + c2 / 2) + dec(c1 / 2) * r3
        im = dec(c1 / 2 + c3) + dec(c2 / 2) * r3
        return complex(float(re), float(im))


ACCEPTANCE_LINES: list[str] = []


def report_criterion(number: int, title: str, passed: bool, detail: str) -> str:
    line = f"criterion {number} [{title}]: {'PASS' if passed else 'FAIL'} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

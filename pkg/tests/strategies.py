from hypothesis import strategies as st

from dilators.core.combinators import Const, Identity, SigmaOf, Sum
from dilators.ordinals.cnf import ExtendedBase, Ordinal, OMEGA, ZERO, as_base
from dilators.ordinals.grammar import parse_base
from dilators.terms.sampling import trace_at
from dilators.terms.term import DilatorTerm, Embedding


def bases(*items):
    """``bases(0, 1, "w")``: each item parsed as an ordinal or ``W + nu``."""
    return [parse_base(str(i)) for i in items]


NORMAL_DILATORS = {
    "identity": Identity(),
    "sum(const:1,identity)": Sum(Const(Ordinal.of(1)), Identity()),
    "sigma:const:1": SigmaOf(Const(Ordinal.of(1))),
    "sigma:identity": SigmaOf(Identity()),
}

LAWFUL_DILATORS = {
    "const:0": Const(ZERO),
    "const:1": Const(Ordinal.of(1)),
    "const:2": Const(Ordinal.of(2)),
    "const:w": Const(OMEGA),
    **NORMAL_DILATORS,
}

# term arguments are drawn from here, cut below the base
ARGUMENTS = bases(0, 1, 2, 3, 4, 5, 6, 7, "w", "w+1", "w+2")
TERM_BASES = bases(2, 3, 5, 8, "w", "w+3")


@st.composite
def ordinals(draw, max_exponent=3, max_coefficient=5):
    """Ordinals below ``w^(max_exponent + 1)``."""
    value = ZERO
    for exp in range(max_exponent, -1, -1):
        coeff = draw(st.integers(min_value=0, max_value=max_coefficient))
        if coeff:
            value = value + (Ordinal.omega_power(Ordinal.of(exp), coeff) if exp else Ordinal.of(coeff))
    return value


@st.composite
def extended_bases(draw):
    rest = draw(ordinals())
    if draw(st.booleans()):
        return ExtendedBase.omega_plus(rest)
    return ExtendedBase.plain(rest)


@st.composite
def dilator_terms(draw, d, base, max_arity=3):
    """Terms of ``d`` over ``base`` with constructors from its trace."""
    base = as_base(base)
    pool = [a for a in ARGUMENTS if a < base]
    arities = [n for n in range(min(max_arity, len(pool)) + 1) if trace_at(d, n)]
    n = draw(st.sampled_from(arities))
    sigma = draw(st.sampled_from(trace_at(d, n)))
    args = draw(st.lists(st.sampled_from(pool), min_size=n, max_size=n, unique=True))
    return DilatorTerm(sigma, tuple(sorted(args)), base)


@st.composite
def embeddings(draw, min_domain=2, max_domain=6, max_gap=4):
    """Strictly increasing maps ``n -> m`` between naturals, listed pointwise."""
    n = draw(st.integers(min_value=min_domain, max_value=max_domain))
    m = n + draw(st.integers(min_value=0, max_value=max_gap))
    images = sorted(draw(st.lists(st.integers(min_value=0, max_value=m - 1), min_size=n, max_size=n, unique=True)))
    points = tuple((ExtendedBase.plain(i), ExtendedBase.plain(j)) for i, j in enumerate(images))
    return Embedding(ExtendedBase.plain(n), ExtendedBase.plain(m), points)

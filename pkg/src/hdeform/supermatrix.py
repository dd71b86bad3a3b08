"""Matrices with algebra-valued entries and the graded tensor embeddings.

Matrix products never insert signs: every sign comes either from the entry
algebra or from the embedding factors below.  Index parities are
p(1) = 0, p(2) = 1 for 2x2 matrices, induced on pairs (11, 12, 21, 22) and
triples for the 4x4 and 8x8 cases.
"""

import json
from itertools import product

from .algebra import Alphabet, Element, Generator, ODD, substitute
from .errors import DimensionMismatch
from .scalar import ONE, Q, Q_INV, Scalar

H_ALPHABET = Alphabet([Generator("h", ODD)])

SIZES = {2: 1, 4: 2, 8: 3}


def multi_indices(size):
    """Multi-indices (tuples over {1, 2}) labelling rows of a size-n matrix."""
    legs = SIZES.get(size)
    if legs is None:
        return [(i + 1,) for i in range(size)]
    return list(product((1, 2), repeat=legs))


def p(index):
    return index - 1


def index_parity(size):
    return [sum(p(i) for i in mi) & 1 for mi in multi_indices(size)]


class SuperMatrix:
    """Rectangular array of Elements over one alphabet."""

    __slots__ = ("rows", "cols", "entries", "alphabet")

    def __init__(self, entries, alphabet=None):
        entries = [list(row) for row in entries]
        if not entries or not entries[0]:
            raise DimensionMismatch("empty matrix")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise DimensionMismatch("ragged rows")
        if alphabet is None:
            alphabet = next((e.alphabet for row in entries for e in row if isinstance(e, Element)),
                            H_ALPHABET)
        self.alphabet = alphabet
        self.entries = [[_entry(e, alphabet) for e in row] for row in entries]
        self.rows = len(entries)
        self.cols = width

    @classmethod
    def identity(cls, n, alphabet=H_ALPHABET):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], alphabet)

    @classmethod
    def zeros(cls, rows, cols, alphabet=H_ALPHABET):
        return cls([[0] * cols for _ in range(rows)], alphabet)

    @classmethod
    def parse(cls, rows, alphabet):
        return cls([[Element.parse(t, alphabet) if isinstance(t, str) else t for t in row]
                    for row in rows], alphabet)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def shape(self):
        return self.rows, self.cols

    def index_parity(self):
        return index_parity(self.rows), index_parity(self.cols)

    def over(self, alphabet):
        """The same matrix with entries read in a larger alphabet."""
        return SuperMatrix([[e.with_alphabet(alphabet) for e in row] for row in self.entries], alphabet)

    def map(self, fn):
        return SuperMatrix([[fn(e) for e in row] for row in self.entries], self.alphabet)

    def normalized(self, system):
        return self.map(system.normal_form)

    def transpose(self):
        return SuperMatrix([list(col) for col in zip(*self.entries)], self.alphabet)

    # -- arithmetic -----------------------------------------------------------

    def _same_shape(self, other):
        if self.shape() != other.shape():
            raise DimensionMismatch(f"{self.shape()} vs {other.shape()}")

    def __add__(self, other):
        self._same_shape(other)
        return SuperMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                           self.alphabet)

    def __sub__(self, other):
        self._same_shape(other)
        return SuperMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                           self.alphabet)

    def __neg__(self):
        return self.map(lambda e: -e)

    def scale(self, s):
        return self.map(lambda e: e.scale(s))

    def __mul__(self, other):
        if isinstance(other, SuperMatrix):
            return mat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (isinstance(other, SuperMatrix) and self.shape() == other.shape()
                and all(a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s)))

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.entries))

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def nonzero_entries(self):
        return [(i, j, e) for i, row in enumerate(self.entries) for j, e in enumerate(row) if e]

    def limit_at_one(self):
        """Entry-wise q -> 1; raises PoleAtOne on a surviving singularity."""
        return self.map(lambda e: e.map_coefficients(lambda c: Scalar.coerce(c.limit_at_one())))

    def flip_h(self, h="h"):
        return self.map(lambda e: flip_h(e, h))

    def at_h_zero(self, h="h"):
        return self.map(lambda e: set_h_zero(e, h))

    # -- text / json ----------------------------------------------------------

    def grid(self):
        cells = [[str(e) for e in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

    def __str__(self):
        return self.grid()

    def __repr__(self):
        return f"SuperMatrix({self.rows}x{self.cols})"

    def to_json(self):
        return [[str(e) for e in row] for row in self.entries]

    def dumps(self):
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data, alphabet=H_ALPHABET):
        if isinstance(data, str):
            data = json.loads(data)
        return cls.parse(data, alphabet)


def _entry(value, alphabet):
    if isinstance(value, Element):
        if value.alphabet != alphabet:
            return value.with_alphabet(alphabet)
        return value
    return Element.scalar(alphabet, value)


def flip_h(e, h="h"):
    """Substitute h -> -h (odd powers change sign)."""
    return Element._wrap(e.alphabet, {w: (-c if w.count(h) % 2 else c) for w, c in e.terms.items()})


def set_h_zero(e, h="h"):
    return Element._wrap(e.alphabet, {w: c for w, c in e.terms.items() if h not in w})


def mat_mul(a, b, system=None):
    """Row-by-column product, A-entry times B-entry; optionally normalized."""
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    if a.alphabet != b.alphabet:
        from .errors import AlphabetMismatch

        raise AlphabetMismatch("matrices over different alphabets")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = Element.zero(a.alphabet)
            for k in range(a.cols):
                x, y = a.entries[i][k], b.entries[k][j]
                if x.terms and y.terms:
                    acc = acc + x * y
            if system is not None:
                acc = system.normal_form(acc)
            row.append(acc)
        out.append(row)
    return SuperMatrix(out, a.alphabet)


def _require(m, rows, cols):
    if m.shape() != (rows, cols):
        raise DimensionMismatch(f"expected {rows}x{cols}, got {m.rows}x{m.cols}")


def embed_T1(m):
    """(T1)^{ij}_{kl} = (-1)^{p(k)(p(j)+p(l))} M^i_k delta^j_l."""
    _require(m, 2, 2)
    idx = multi_indices(4)
    rows = []
    for i, j in idx:
        row = []
        for k, l in idx:
            if j != l:
                row.append(0)
                continue
            e = m.entries[i - 1][k - 1]
            row.append(-e if (p(k) * (p(j) + p(l))) % 2 else e)
        rows.append(row)
    return SuperMatrix(rows, m.alphabet)


def embed_T2(m):
    """(T2)^{ij}_{kl} = (-1)^{p(i)(p(j)+p(l))} M^j_l delta^i_k."""
    _require(m, 2, 2)
    idx = multi_indices(4)
    rows = []
    for i, j in idx:
        row = []
        for k, l in idx:
            if i != k:
                row.append(0)
                continue
            e = m.entries[j - 1][l - 1]
            row.append(-e if (p(i) * (p(j) + p(l))) % 2 else e)
        rows.append(row)
    return SuperMatrix(rows, m.alphabet)


CONVENTIONS = ("ungraded", "graded", "graded_leg")


def embed_R(r, slot, convention="graded"):
    """Place a 4x4 matrix on legs (1,2), (1,3) or (2,3) of a triple product.

    ``ungraded`` is plain Kronecker placement.  ``graded`` keeps R12 and R23
    as Kronecker products and obtains R13 = P12 R23 P12 with the graded flip
    P, which amounts to the sign (-1)^{p(j)(p(i)+p(l))} for middle index j.
    ``graded_leg`` instead signs every operator leg that passes the spectator
    index s by (-1)^{p(s)(p(row)+p(col))}, on R23 and R13.
    """
    _require(r, 4, 4)
    slot = str(slot)
    if slot not in ("12", "13", "23"):
        raise ValueError(f"slot must be 12, 13 or 23, got {slot!r}")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    idx4 = {mi: n for n, mi in enumerate(multi_indices(4))}
    idx8 = multi_indices(8)
    rows = []
    for i, j, k in idx8:
        row = []
        for l, m, n in idx8:
            odd = False
            if slot == "12":
                e = r.entries[idx4[i, j]][idx4[l, m]] if k == n else None
            elif slot == "23":
                e = r.entries[idx4[j, k]][idx4[m, n]] if i == l else None
                if convention == "graded_leg":
                    odd = p(i) * (p(j) + p(k) + p(m) + p(n)) % 2
            else:
                e = r.entries[idx4[i, k]][idx4[l, n]] if j == m else None
                if convention == "graded":
                    odd = p(j) * (p(i) + p(l)) % 2
                elif convention == "graded_leg":
                    odd = p(j) * (p(k) + p(n)) % 2
            row.append(0 if e is None else (-e if odd else e))
        rows.append(row)
    return SuperMatrix(rows, r.alphabet)


def super_permutation(alphabet=H_ALPHABET):
    """P^{ab}_{cd} = (-1)^{p(a)p(b)} delta^a_d delta^b_c."""
    idx = multi_indices(4)
    return SuperMatrix([[(-1 if p(a) * p(b) else 1) if (a, b) == (d, c) else 0 for c, d in idx]
                        for a, b in idx], alphabet)


def kron(a, b):
    """Plain Kronecker product (no signs)."""
    rows = []
    for i in range(a.rows):
        for k in range(b.rows):
            rows.append([a.entries[i][j] * b.entries[k][l]
                         for j in range(a.cols) for l in range(b.cols)])
    return SuperMatrix(rows, a.alphabet)


# ----------------------------------------------------------------------------
# named matrices
# ----------------------------------------------------------------------------

def _h(alphabet, coeff=ONE):
    return Element.monomial(alphabet, ("h",), coeff)


def T_hat(alphabet, names=("alpha", "b", "c", "delta")):
    a, b, c, d = (Element.generator(alphabet, n) for n in names)
    return SuperMatrix([[a, b], [c, d]], alphabet)


def g_matrix(alphabet=H_ALPHABET, sign=1):
    """g = (1 0; h/(q-1) 1); sign=-1 gives its inverse."""
    k = _h(alphabet, Scalar((sign,), (-1, 1)))
    return SuperMatrix([[1, 0], [k, 1]], alphabet)


def R_q(alphabet=H_ALPHABET):
    s = Q + Q_INV
    d = Q - Q_INV
    return SuperMatrix([[s, 0, 0, 0], [0, -2, -d, 0], [0, d, -2, 0], [0, 0, 0, s]], alphabet)


def R_q1(alphabet=H_ALPHABET):
    d = Q - Q_INV
    return SuperMatrix([[Q, 0, 0, 0], [0, -1, 0, 0], [0, d, -1, 0], [0, 0, 0, Q_INV]], alphabet)


def R_q2(alphabet=H_ALPHABET):
    d = Q - Q_INV
    return SuperMatrix([[Q_INV, 0, 0, 0], [0, -1, -d, 0], [0, 0, -1, 0], [0, 0, 0, Q]], alphabet)


def R_h(alphabet=H_ALPHABET, sign=1):
    h = _h(alphabet, Scalar((sign,)))
    return SuperMatrix([[1, 0, 0, 0], [-h, -1, 0, 0], [-h, 0, -1, 0], [0, h, -h, 1]], alphabet)


def G_h(alphabet=H_ALPHABET, sign=1, system=None):
    """g1 * g2^{-1} with g1 = T1-embedding of g, g2^{-1} = T2-embedding of g^{-1}."""
    g1 = embed_T1(g_matrix(alphabet, sign))
    g2_inv = embed_T2(g_matrix(alphabet, -sign))
    return mat_mul(g1, g2_inv, system or _h_system(alphabet))


def _h_system(alphabet):
    from .presets import h_only

    return h_only(alphabet)


MATRIX_NAMES = ("T_GrQ", "T_GrH", "T_generic", "g", "g_inv", "G_h", "G_minus_h",
                "R_q", "R_q1", "R_q2", "R_h", "R_minus_h", "I2", "I4", "I8")


def build_matrix(name, alphabet=None):
    """Named matrix; entries live in ``alphabet`` (default: the smallest fitting one)."""
    from . import presets

    if name == "T_GrQ":
        return T_hat(alphabet or presets.build("GrQ").alphabet)
    if name == "T_GrH":
        return T_hat(alphabet or presets.build("GrH").alphabet)
    if name == "T_generic":
        return T_hat(alphabet or presets.build("Generic_x_Plane").alphabet,
                     ("t11", "t12", "t21", "t22"))
    alphabet = alphabet or H_ALPHABET
    builders = {
        "g": lambda: g_matrix(alphabet, 1),
        "g_inv": lambda: g_matrix(alphabet, -1),
        "G_h": lambda: G_h(alphabet, 1),
        "G_minus_h": lambda: G_h(alphabet, -1),
        "R_q": lambda: R_q(alphabet),
        "R_q1": lambda: R_q1(alphabet),
        "R_q2": lambda: R_q2(alphabet),
        "R_h": lambda: R_h(alphabet, 1),
        "R_minus_h": lambda: R_h(alphabet, -1),
        "I2": lambda: SuperMatrix.identity(2, alphabet),
        "I4": lambda: SuperMatrix.identity(4, alphabet),
        "I8": lambda: SuperMatrix.identity(8, alphabet),
    }
    if name not in builders:
        raise KeyError(f"unknown matrix {name!r}; choose from {', '.join(MATRIX_NAMES)}")
    return builders[name]()


def substitute_entries(m, images, target):
    return SuperMatrix([[substitute(e, images, target) for e in row] for row in m.entries], target)

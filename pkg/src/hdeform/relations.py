"""Linear algebra on relation sets: orientation, q -> 1 limits, comparison.

Relations are Elements read as vectors indexed by words.  Row reduction
works over any exact field whose elements support + - * / and truthiness
(Scalar for Q(q), Fraction for Q).
"""

from fractions import Fraction

from .algebra import Element, RewriteSystem
from .errors import ExtractionFailure, InvalidRule
from .scalar import Scalar

Q_MINUS_ONE = Scalar((-1, 1))


def orientation_key(alphabet, precedence, nilpotent=None):
    """Sort key on words; the largest word of a relation becomes its pattern.

    Fewer factors of the nilpotent parameter rank higher, then longer words,
    then words with more even letters, then the lexicographically later word
    under ``precedence``.  This is the measure of the termination audit, so
    extracted rules pass it.
    """
    rank = {x: i for i, x in enumerate(precedence)}
    parity = alphabet.parities

    def key(word):
        hdeg = word.count(nilpotent) if nilpotent else 0
        evens = sum(1 for x in word if not parity[x])
        return (-hdeg, len(word), evens, tuple(rank[x] for x in word))

    return key


def row_reduce(rows, key):
    """Reduced echelon form of dict-rows; returns {pivot word: row}.

    Each returned row has coefficient 1 on its pivot (its ``key``-largest
    word) and no other row mentions that pivot.
    """
    pivots = {}
    for row in rows:
        r = {w: c for w, c in row.items() if c}
        while True:
            hit = next((w for w in r if w in pivots), None)
            if hit is None:
                break
            factor = r[hit]
            for w, c in pivots[hit].items():
                v = r.get(w)
                v = -factor * c if v is None else v - factor * c
                if v:
                    r[w] = v
                else:
                    r.pop(w, None)
        if not r:
            continue
        lead = max(r, key=key)
        inv = 1 / r[lead] if not isinstance(r[lead], Scalar) else r[lead].inverse()
        r = {w: c * inv for w, c in r.items()}
        for other in pivots.values():
            factor = other.get(lead)
            if factor:
                for w, c in r.items():
                    v = other.get(w)
                    v = -factor * c if v is None else v - factor * c
                    if v:
                        other[w] = v
                    else:
                        other.pop(w, None)
        pivots[lead] = r
    return pivots


def with_h_multiples(relations, system):
    """The relations together with h*r, normalized by ``system`` (h-rules)."""
    h = system.nilpotent
    if h is None:
        return list(relations)
    out = []
    hh = Element.generator(system.alphabet, h)
    for r in relations:
        r = system.normal_form(r)
        if r:
            out.append(r)
        hr = system.normal_form(hh * r)
        if hr:
            out.append(hr)
    return out


def orient(relations, alphabet, precedence, nilpotent=None, label="derived", base_rules=()):
    """Turn a set of relations into rewrite rules via reduced row echelon form.

    ``base_rules`` (e.g. the h-migration rules) are appended after the
    extracted rules.
    """
    key = orientation_key(alphabet, precedence, nilpotent)
    pivots = row_reduce([r.terms for r in relations], key)
    rules = []
    for lead in sorted(pivots, key=key, reverse=True):
        row = pivots[lead]
        rest = Element._wrap(alphabet, {w: -c for w, c in row.items() if w != lead})
        rules.append((lead, rest))
    try:
        return RewriteSystem(alphabet, rules + list(base_rules), label=label,
                             precedence=precedence, nilpotent=nilpotent)
    except InvalidRule as exc:
        raise ExtractionFailure(f"{label}: {exc}") from exc


def _normalize_at_one(vec):
    """Scale by a power of (q - 1) so the vector is finite and nonzero at q = 1."""
    order = min(c.valuation_at_one() for c in vec.values())
    if order == 0:
        return vec
    factor = Q_MINUS_ONE ** (-order)
    return {w: c * factor for w, c in vec.items()}


def _dependency(rows, words):
    """Rational coefficients of a linear dependency among rows, or None."""
    n = len(rows)
    mat = [[row.get(w, Fraction(0)) for w in words] + [Fraction(int(i == k)) for k in range(n)]
           for i, row in enumerate(rows)]
    m = len(words)
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(n):
            if i != r and mat[i][col]:
                f = mat[i][col] / mat[r][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
    if r == n:
        return None
    return mat[r][m:]


def flat_limit(relations, alphabet):
    """Relations spanning the q -> 1 limit of the span of ``relations``.

    The span is first reduced to a basis over Q(q); each basis vector is
    rescaled by powers of (q - 1) to be pole-free and nonzero at q = 1.
    Whenever the values at q = 1 become dependent, the dependent
    combination (which vanishes at q = 1) is divided by (q - 1) and
    replaces one of its members.  The result has the same dimension as the
    generic span; every limit is taken on pole-free coefficients.
    """
    words_key = alphabet.word_key
    basis = [_normalize_at_one(v) for v in row_reduce([r.terms for r in relations], words_key).values()]
    for _ in range(10_000):
        words = sorted({w for v in basis for w in v}, key=words_key)
        values = [{w: c.limit_at_one() for w, c in v.items()} for v in basis]
        dep = _dependency(values, words)
        if dep is None:
            break
        k = max(i for i, c in enumerate(dep) if c)
        combo = {}
        for c, v in zip(dep, basis):
            if not c:
                continue
            s = Scalar.coerce(c)
            for w, x in v.items():
                y = combo.get(w)
                y = s * x if y is None else y + s * x
                if y:
                    combo[w] = y
                else:
                    combo.pop(w, None)
        if not combo:
            raise ExtractionFailure("degenerate basis in flat limit")
        basis[k] = _normalize_at_one(combo)
    else:
        raise ExtractionFailure("flat limit did not stabilise")
    out = []
    for v in basis:
        values = {w: Scalar.coerce(c.limit_at_one()) for w, c in v.items()}
        out.append(Element._wrap(alphabet, {w: c for w, c in values.items() if c}))
    return out


def minimal_rules(system, keep=()):
    """Drop rules whose relation already reduces to zero under the others.

    Rules whose pattern is listed in ``keep`` are never dropped.  Candidates
    are tried from the last rule backwards.
    """
    rules = list(system.rules)
    i = len(rules) - 1
    while i >= 0:
        r = rules[i]
        if r.pattern not in keep:
            others = rules[:i] + rules[i + 1:]
            trial = RewriteSystem(system.alphabet, others, label=system.label,
                                  precedence=system.precedence, nilpotent=system.nilpotent,
                                  validate=False)
            if trial.normal_form(r.relation()).is_zero():
                rules = others
        i -= 1
    return RewriteSystem(system.alphabet, rules, label=system.label,
                         precedence=system.precedence, nilpotent=system.nilpotent)


def rename(e, mapping, alphabet):
    """Relabel generators (name -> name) into ``alphabet``."""
    out = {}
    for w, c in e.terms.items():
        out[tuple(mapping.get(x, x) for x in w)] = c
    return Element(alphabet, out)


def unresolved_relations(relations, system):
    """Relations that do not normalize to zero under ``system``."""
    return [(r, system.normal_form(r.with_alphabet(system.alphabet)))
            for r in relations
            if not system.normal_form(r.with_alphabet(system.alphabet)).is_zero()]


def same_ideal(a, b):
    """Mutual zero-normalization of the defining relations of two systems.

    Returns the list of (relation, residue) pairs that fail in either
    direction; empty means the two presentations define the same ideal
    (given both systems are confluent).
    """
    return unresolved_relations(a.relations(), b) + unresolved_relations(b.relations(), a)


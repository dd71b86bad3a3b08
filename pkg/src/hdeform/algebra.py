"""Free associative superalgebras over Q(q) and oriented rewriting.

Words are tuples of generator names.  An :class:`Element` is a finite map
from words to nonzero :class:`~hdeform.scalar.Scalar` coefficients; the free
product concatenates words and never inserts signs.  All graded signs come
from the rules of a :class:`RewriteSystem`.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Optional

from .errors import (
    AlphabetMismatch,
    InvalidRule,
    MissingImage,
    StepLimitExceeded,
    UnknownGenerator,
)
from .scalar import ONE, ZERO, Scalar, format_scalar, is_simple

DEFAULT_STEP_LIMIT = 10**6

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int
    inverse_of: Optional[str] = None

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"parity must be 0 or 1, got {self.parity!r}")
        if self.inverse_of is not None and self.parity != EVEN:
            raise ValueError(f"only even generators may be inverted ({self.name})")


class Alphabet:
    """Ordered set of graded generators."""

    def __init__(self, generators):
        self.generators = tuple(generators)
        self.index = {}
        for i, g in enumerate(self.generators):
            if g.name in self.index:
                raise ValueError(f"duplicate generator name {g.name!r}")
            self.index[g.name] = i
        self.parities = {g.name: g.parity for g in self.generators}
        for g in self.generators:
            if g.inverse_of is not None:
                base = self.parities.get(g.inverse_of)
                if base is None:
                    raise ValueError(f"{g.name} inverts unknown generator {g.inverse_of!r}")
                if base != EVEN:
                    raise ValueError(f"{g.name} inverts odd generator {g.inverse_of!r}")
        self._hash = hash(self.generators)

    def __contains__(self, name):
        return name in self.index

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.generators == other.generators

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Alphabet(" + ", ".join(f"{g.name}:{'odd' if g.parity else 'even'}" for g in self) + ")"

    @property
    def names(self):
        return tuple(g.name for g in self.generators)

    def parity(self, name):
        try:
            return self.parities[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def word_parity(self, word):
        p = self.parities
        return sum(p[x] for x in word) & 1

    def inverse_name(self, name):
        """Name of the formal inverse of ``name``, or None."""
        for g in self.generators:
            if g.inverse_of == name:
                return g.name
        return None

    def word_key(self, word):
        idx = self.index
        return (len(word), tuple(idx[x] for x in word))

    def extend(self, generators):
        return Alphabet(self.generators + tuple(generators))


def _as_scalar(value):
    return value if isinstance(value, Scalar) else Scalar.coerce(value)


class Element:
    """Scalar-weighted finite sum of words; treat as immutable."""

    __slots__ = ("alphabet", "terms", "_hash")

    def __init__(self, alphabet, terms=None):
        self.alphabet = alphabet
        clean = {}
        if terms:
            for word, coeff in dict(terms).items():
                word = tuple(word)
                for x in word:
                    if x not in alphabet:
                        raise UnknownGenerator(x)
                coeff = _as_scalar(coeff)
                if coeff:
                    clean[word] = clean.get(word, ZERO) + coeff
                    if not clean[word]:
                        del clean[word]
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, alphabet, terms):
        obj = object.__new__(cls)
        obj.alphabet = alphabet
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, alphabet):
        return cls._wrap(alphabet, {})

    @classmethod
    def one(cls, alphabet):
        return cls._wrap(alphabet, {(): ONE})

    @classmethod
    def scalar(cls, alphabet, value):
        value = _as_scalar(value)
        return cls._wrap(alphabet, {(): value} if value else {})

    @classmethod
    def generator(cls, alphabet, name):
        if name not in alphabet:
            raise UnknownGenerator(name)
        return cls._wrap(alphabet, {(name,): ONE})

    @classmethod
    def monomial(cls, alphabet, word, coeff=ONE):
        return cls(alphabet, {tuple(word): coeff})

    @classmethod
    def parse(cls, text, alphabet):
        from .parsing import parse

        return parse(text, alphabet)

    # -- inspection -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        key = self.alphabet.word_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def words(self):
        return [w for w, _ in self.sorted_terms()]

    def coefficient(self, word):
        return self.terms.get(tuple(word), ZERO)

    def as_scalar(self):
        """The scalar value if this is a multiple of the unit, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def parities(self):
        wp = self.alphabet.word_parity
        return {wp(w) for w in self.terms}

    def is_homogeneous(self):
        return len(self.parities()) <= 1

    def max_degree(self):
        return max((len(w) for w in self.terms), default=0)

    def map_coefficients(self, fn):
        out = {}
        for w, c in self.terms.items():
            c = fn(c)
            if c:
                out[w] = c
        return Element._wrap(self.alphabet, out)

    def with_alphabet(self, alphabet):
        """Reinterpret this element over a larger (or equal) alphabet."""
        for w in self.terms:
            for x in w:
                if x not in alphabet:
                    raise UnknownGenerator(x)
        return Element._wrap(alphabet, dict(self.terms))

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.alphabet is not other.alphabet and self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet!r} vs {other.alphabet!r}")

    def _coerce(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Scalar)) or isinstance(other, Fraction):
            return Element.scalar(self.alphabet, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return Element._wrap(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._wrap(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, s):
        s = _as_scalar(s)
        if not s:
            return Element.zero(self.alphabet)
        return Element._wrap(self.alphabet, {w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Scalar)) or isinstance(other, Fraction):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)) or isinstance(other, Fraction):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Element.one(self.alphabet)
        for _ in range(n):
            result = result * self
        return result

    # -- comparison / printing -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self.terms == Element.scalar(self.alphabet, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def format_word(word):
    if not word:
        return ""
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = j - i
        parts.append(word[i] if n == 1 else f"{word[i]}^{n}")
        i = j
    return "*".join(parts)


def format_element(e):
    """Deterministic text form; parses back to the same element."""
    if not e.terms:
        return "0"
    out = []
    for i, (word, coeff) in enumerate(e.sorted_terms()):
        negative = coeff.sign() < 0
        mag = -coeff if negative else coeff
        w = format_word(word)
        if not w:
            body = format_scalar(mag)
            if not is_simple(mag):
                body = f"({body})"
        elif mag.is_one():
            body = w
        else:
            s = format_scalar(mag)
            body = f"{s}*{w}" if is_simple(mag) else f"({s})*{w}"
        if i == 0:
            out.append("-" + body if negative else body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


def multiply(a, b):
    """Free-algebra product: concatenation of words, no signs."""
    a._check(b)
    if not a.terms or not b.terms:
        return Element.zero(a.alphabet)
    out = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            w = wa + wb
            c = ca * cb
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
    return Element._wrap(a.alphabet, out)


def substitute(e, images, target=None):
    """Homomorphic extension of ``images`` (name -> Element) applied to ``e``.

    Words map to the ordered product of their letters' images; no signs are
    inserted.  ``target`` is the alphabet of the result; it defaults to the
    alphabet shared by the images.
    """
    if target is None:
        alphabets = {img.alphabet for img in images.values()}
        if len(alphabets) > 1:
            raise AlphabetMismatch("images live in different alphabets")
        target = alphabets.pop() if alphabets else e.alphabet
    for name, img in images.items():
        if img.alphabet != target:
            raise AlphabetMismatch(f"image of {name} is not over the target alphabet")
    cache = {(): Element.one(target)}

    def image_of(word):
        hit = cache.get(word)
        if hit is not None:
            return hit
        head = image_of(word[:-1])
        last = word[-1]
        if last not in images:
            raise MissingImage(last)
        value = multiply(head, images[last])
        cache[word] = value
        return value

    result = Element.zero(target)
    for word, coeff in e.terms.items():
        result = result + image_of(word).scale(coeff)
    return result


# ----------------------------------------------------------------------------
# rewriting
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    pattern: tuple
    replacement: Element

    def relation(self):
        """pattern - replacement, as an element."""
        return Element.monomial(self.replacement.alphabet, self.pattern) - self.replacement

    def __str__(self):
        return f"{format_word(self.pattern)} -> {self.replacement}"


class RewriteSystem:
    """Ordered list of oriented rules over a graded alphabet.

    ``precedence`` lists generator names from the front to the back of
    normal words; it drives the termination audit and the orientation of
    extracted relations.  ``nilpotent`` names the odd deformation
    parameter (``h``) if the alphabet has one.
    """

    def __init__(self, alphabet, rules, label="", precedence=None, nilpotent=None,
                 step_limit=DEFAULT_STEP_LIMIT, validate=True):
        self.alphabet = alphabet
        built = []
        for r in rules:
            if not isinstance(r, Rule):
                pattern, replacement = r
                if isinstance(replacement, str):
                    replacement = Element.parse(replacement, alphabet)
                elif not isinstance(replacement, Element):
                    replacement = Element.scalar(alphabet, replacement)
                r = Rule(tuple(pattern), replacement)
            built.append(r)
        self.rules = tuple(built)
        self.label = label
        self.precedence = tuple(precedence) if precedence else alphabet.names
        self.nilpotent = nilpotent
        self.step_limit = step_limit
        if validate:
            self.validate()
        self._lookup = {}
        for i, r in enumerate(self.rules):
            self._lookup.setdefault(r.pattern, i)
        self._lengths = sorted({len(r.pattern) for r in self.rules})
        self._memo = {}

    def __repr__(self):
        return f"RewriteSystem({self.label!r}, {len(self.rules)} rules)"

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def validate(self):
        a = self.alphabet
        for r in self.rules:
            if len(r.pattern) < 1:
                raise InvalidRule("empty pattern")
            for x in r.pattern:
                if x not in a:
                    raise UnknownGenerator(x)
            if r.replacement.alphabet != a:
                raise AlphabetMismatch(f"replacement of {format_word(r.pattern)}")
            p = a.word_parity(r.pattern)
            n = len(r.pattern)
            for w in r.replacement.terms:
                if a.word_parity(w) != p:
                    raise InvalidRule(f"rule {r} does not preserve parity")
                for i in range(len(w) - n + 1):
                    if w[i:i + n] == r.pattern:
                        raise InvalidRule(f"rule {r} reproduces its own pattern")

    def relations(self):
        return [r.relation() for r in self.rules]

    def element(self, text):
        return Element.parse(text, self.alphabet)

    def derived(self, extra_rules=(), label=None, **kw):
        """A new system with ``extra_rules`` appended."""
        opts = dict(precedence=self.precedence, nilpotent=self.nilpotent,
                    step_limit=self.step_limit)
        opts.update(kw)
        return RewriteSystem(self.alphabet, self.rules + tuple(extra_rules),
                             label=label or self.label, **opts)

    # -- one-step reduction ---------------------------------------------------

    def find_redex(self, word):
        """(position, rule index) of the leftmost redex, earliest rule first."""
        lookup = self._lookup
        lengths = self._lengths
        n = len(word)
        for i in range(n):
            best = None
            for L in lengths:
                if i + L > n:
                    break
                k = lookup.get(word[i:i + L])
                if k is not None and (best is None or k < best):
                    best = k
            if best is not None:
                return i, best
        return None

    def rewrite_at(self, word, position, rule_index):
        """Element obtained by applying one rule at one position of ``word``."""
        r = self.rules[rule_index]
        pre = word[:position]
        post = word[position + len(r.pattern):]
        return Element._wrap(self.alphabet,
                             {pre + w + post: c for w, c in r.replacement.terms.items()})

    def _step(self, word):
        hit = self.find_redex(word)
        if hit is None:
            return None
        r = self.rules[hit[1]]
        pre = word[:hit[0]]
        post = word[hit[0] + len(r.pattern):]
        return [(pre + w + post, c) for w, c in r.replacement.terms.items()]

    def _nf_word(self, word, step_limit):
        memo = self._memo
        hit = memo.get(word)
        if hit is not None:
            return hit
        steps = 0
        active = {word}
        stack = [[word, None, 0]]
        while stack:
            frame = stack[-1]
            w, children, idx = frame
            if children is None:
                children = self._step(w)
                if children is None:
                    memo[w] = {w: ONE}
                    active.discard(w)
                    stack.pop()
                    continue
                steps += 1
                if steps > step_limit:
                    raise StepLimitExceeded(
                        f"{self.label or 'system'}: more than {step_limit} rewrite steps "
                        f"normalizing {format_word(word) or '1'}")
                frame[1] = children
            pushed = False
            while idx < len(children):
                child = children[idx][0]
                idx += 1
                if child not in memo:
                    if child in active:
                        raise StepLimitExceeded(
                            f"{self.label or 'system'}: rewriting cycles through "
                            f"{format_word(child) or '1'}")
                    frame[2] = idx
                    active.add(child)
                    stack.append([child, None, 0])
                    pushed = True
                    break
            if pushed:
                continue
            acc = {}
            for child, c in children:
                for u, d in memo[child].items():
                    v = acc.get(u)
                    v = c * d if v is None else v + c * d
                    if v:
                        acc[u] = v
                    else:
                        acc.pop(u, None)
            memo[w] = acc
            active.discard(w)
            stack.pop()
        return memo[word]

    def normal_form(self, e, step_limit=None):
        if isinstance(e, str):
            e = self.element(e)
        if e.alphabet is not self.alphabet and e.alphabet != self.alphabet:
            raise AlphabetMismatch(f"element over {e.alphabet!r}, system {self.label!r}")
        limit = step_limit or self.step_limit
        out = {}
        for word, coeff in e.terms.items():
            for u, d in self._nf_word(word, limit).items():
                v = out.get(u)
                v = coeff * d if v is None else v + coeff * d
                if v:
                    out[u] = v
                else:
                    out.pop(u, None)
        return Element._wrap(self.alphabet, out)

    __call__ = normal_form

    def is_normal(self, word):
        return self.find_redex(tuple(word)) is None

    def reduces_to_zero(self, e):
        return self.normal_form(e).is_zero()

    # -- diagnostics ----------------------------------------------------------

    def termination_audit(self):
        return termination_audit(self)

    @cached_property
    def h_degree_bound(self):
        """True when ``nilpotent`` squares to zero under this system."""
        h = self.nilpotent
        return h is not None and self.normal_form(Element.monomial(self.alphabet, (h, h))).is_zero()


def normal_form(e, system, step_limit=None):
    return system.normal_form(e, step_limit=step_limit)


# ----------------------------------------------------------------------------
# termination audit
# ----------------------------------------------------------------------------

def _inversions(word, rank):
    r = [rank[x] for x in word]
    return sum(1 for i in range(len(r)) for j in range(i + 1, len(r)) if r[i] > r[j])


def termination_audit(system):
    """Rules that break the two-phase decreasing measure.

    A replacement monomial is accepted when it carries more factors of the
    nilpotent parameter than the pattern (these are truncated by h*h -> 0),
    or, at equal h-degree, when it is shorter, or of equal length with fewer
    even letters, or a permutation of the pattern with fewer inversions
    under ``system.precedence``.  Returns a list of offending rule strings.
    """
    rank = {x: i for i, x in enumerate(system.precedence)}
    parity = system.alphabet.parities
    h = system.nilpotent
    offenders = []
    if h is not None and not system.h_degree_bound:
        offenders.append(f"{h}*{h} does not reduce to 0")

    def key(word):
        return (len(word), sum(1 for x in word if parity[x] == EVEN))

    for r in system.rules:
        p = r.pattern
        hp = p.count(h) if h else 0
        for w in r.replacement.terms:
            hw = w.count(h) if h else 0
            if hw > hp:
                continue
            if hw < hp:
                offenders.append(str(r))
                break
            if key(w) < key(p):
                continue
            if key(w) == key(p) and sorted(w) == sorted(p) and _inversions(w, rank) < _inversions(p, rank):
                continue
            offenders.append(str(r))
            break
    return offenders


# ----------------------------------------------------------------------------
# local confluence
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Ambiguity:
    word: tuple
    first: int
    first_pos: int
    second: int
    second_pos: int
    left: Element
    right: Element

    def __str__(self):
        return (f"{format_word(self.word)}: rule {self.first}@{self.first_pos} -> {self.left}; "
                f"rule {self.second}@{self.second_pos} -> {self.right}")


def ambiguities(system, max_word_len):
    """Overlap and inclusion ambiguities between rule patterns.

    Yields (word, rule_i, pos_i, rule_j, pos_j).
    """
    rules = system.rules
    for i, ri in enumerate(rules):
        pi = ri.pattern
        for j, rj in enumerate(rules):
            pj = rj.pattern
            # inclusion: pj occurs inside pi (equal patterns reported once)
            if len(pj) <= len(pi) <= max_word_len and not (len(pi) == len(pj) and j <= i):
                for pos in range(len(pi) - len(pj) + 1):
                    if pi[pos:pos + len(pj)] == pj:
                        yield pi, i, 0, j, pos
            # proper overlap: suffix of pi == prefix of pj
            for k in range(1, min(len(pi), len(pj))):
                if pi[-k:] == pj[:k]:
                    word = pi + pj[k:]
                    if len(word) <= max_word_len:
                        yield word, i, 0, j, len(pi) - k


def check_local_confluence(system, max_word_len=4):
    """List of unresolved ambiguities with words up to ``max_word_len``."""
    if max_word_len < 2:
        raise ValueError("max_word_len must be at least 2")
    failures = []
    for word, i, pi, j, pj in ambiguities(system, max_word_len):
        left = system.normal_form(system.rewrite_at(word, pi, i))
        right = system.normal_form(system.rewrite_at(word, pj, j))
        if left != right:
            failures.append(Ambiguity(word, i, pi, j, pj, left, right))
    return failures


def all_words(names, length):
    return [tuple(w) for w in product(names, repeat=length)]

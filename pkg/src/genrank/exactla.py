"""
Exact dense linear algebra over the rationals and prime fields.

Entries are ``fractions.Fraction`` for the rationals and plain ints in
``range(p)`` for GF(p). Matrices are immutable; every operation returns a
new matrix. Row reduction picks the first nonzero entry as pivot.
"""

from fractions import Fraction

from genrank.errors import InputError


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field(object):
    """A coefficient field: ``Field.rational()`` or ``Field.prime(p)``."""

    __slots__ = ("kind", "p")

    def __init__(self, kind="rational", p=None):
        if kind == "rational":
            if p is not None:
                raise InputError("rational field takes no modulus")
        elif kind == "prime":
            if p is None or not _is_prime(int(p)):
                raise InputError("modulus %r is not a prime" % (p,))
            p = int(p)
        else:
            raise InputError("unknown field kind %r" % (kind,))
        self.kind = kind
        self.p = p

    @classmethod
    def rational(cls):
        return cls("rational")

    @classmethod
    def prime(cls, p):
        return cls("prime", p)

    @classmethod
    def parse(cls, text):
        """Parse ``rational`` / ``Q`` / ``gf:<p>``."""
        text = str(text).strip()
        if text in ("rational", "Q", "QQ"):
            return cls.rational()
        if text.lower().startswith("gf:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise InputError("bad field spec %r" % text)
            return cls.prime(p)
        raise InputError("bad field spec %r (expected rational or gf:<p>)" % text)

    def __str__(self):
        return "rational" if self.kind == "rational" else "gf:%d" % self.p

    def __repr__(self):
        return "Field(%s)" % self

    def __eq__(self, other):
        return isinstance(other, Field) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def __call__(self, value):
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(value, bool):
            raise InputError("boolean is not a field element")
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise InputError("bad scalar literal %r" % value)
        elif isinstance(value, float):
            raise InputError("floating point entry %r not allowed" % value)
        if self.kind == "rational":
            try:
                return Fraction(value)
            except TypeError:
                raise InputError("bad scalar %r" % (value,))
        value = Fraction(value)
        den = value.denominator % self.p
        if den == 0:
            raise InputError("denominator of %s vanishes mod %d" % (value, self.p))
        return (value.numerator * pow(den, -1, self.p)) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rational":
            return 1 / x
        return pow(x, -1, self.p)

    def literal(self, x):
        """JSON-friendly form: ints stay ints, other rationals become "a/b"."""
        if self.kind == "prime":
            return int(x)
        if x.denominator == 1:
            return int(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)


class Matrix(object):
    """Immutable dense matrix over a ``Field``.

    Zero-sized shapes are legal and keep their other dimension, so a map
    out of a zero space is a ``rows x 0`` matrix.
    """

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field, rows, cols, data):
        # data: tuple of row tuples, already canonical field elements
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    # --- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise InputError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        data = []
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise InputError("row %d has %d entries, expected %d" % (i, len(r), cols))
            data.append(tuple(field(x) for x in r))
        return cls(field, len(data), cols, tuple(data))

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field, columns, rows):
        columns = [tuple(c) for c in columns]
        data = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls(field, rows, len(columns), data)

    @classmethod
    def from_literal(cls, field, literal, rows, cols):
        """Parse an array-of-rows literal against an expected shape."""
        if not isinstance(literal, list):
            raise InputError("matrix literal must be a list of rows")
        if len(literal) != rows:
            raise InputError("expected %d rows, got %d" % (rows, len(literal)))
        for r in literal:
            if not isinstance(r, list):
                raise InputError("matrix row must be a list")
        return cls.from_rows(field, literal, cols)

    def to_literal(self):
        lit = self.field.literal
        return [[lit(x) for x in row] for row in self.data]

    # --- basic protocol -----------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        return "Matrix(%s, %dx%d, %s)" % (self.field, self.rows, self.cols, self.to_literal())

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def column(self, j):
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    # --- arithmetic ---------------------------------------------------

    def _check_field(self, other):
        if self.field != other.field:
            raise InputError("field mismatch: %s vs %s" % (self.field, other.field))

    def __matmul__(self, other):
        return multiply(self, other)

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise InputError("shape mismatch %s + %s" % (self.shape, other.shape))
        red = _reducer(self.field)
        data = tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        return Matrix(self.field, self.rows, self.cols, data)

    def __neg__(self):
        red = _reducer(self.field)
        data = tuple(tuple(red(-a) for a in r) for r in self.data)
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        red = _reducer(self.field)
        data = tuple(tuple(red(c * a) for a in r) for r in self.data)
        return Matrix(self.field, self.rows, self.cols, data)

    @property
    def T(self):
        data = tuple(zip(*self.data)) if self.rows else ()
        if not self.rows:
            data = tuple(() for _ in range(self.cols))
        return Matrix(self.field, self.cols, self.rows, tuple(tuple(r) for r in data))

    def transpose(self):
        return self.T

    def block(self, r0, r1, c0, c1):
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1``."""
        data = tuple(tuple(row[c0:c1]) for row in self.data[r0:r1])
        return Matrix(self.field, r1 - r0, c1 - c0, data)

    def select_columns(self, idx):
        data = tuple(tuple(row[j] for j in idx) for row in self.data)
        return Matrix(self.field, self.rows, len(idx), data)

    def select_rows(self, idx):
        return Matrix(self.field, len(idx), self.cols, tuple(self.data[i] for i in idx))


def _reducer(field):
    if field.kind == "prime":
        p = field.p
        return lambda x: x % p
    return lambda x: x


def multiply(a, b):
    a._check_field(b)
    if a.cols != b.rows:
        raise InputError("cannot multiply %dx%d by %dx%d" % (a.rows, a.cols, b.rows, b.cols))
    bt = list(zip(*b.data)) if b.rows else [()] * b.cols
    z = a.field.zero
    if a.field.kind == "prime":
        p = a.field.p
        data = tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in bt) for r in a.data)
    else:
        data = tuple(tuple(sum((x * y for x, y in zip(r, c)), z) for c in bt) for r in a.data)
    return Matrix(a.field, a.rows, b.cols, data)


def hstack(field, mats, rows=None):
    if not mats:
        return Matrix.zeros(field, rows or 0, 0)
    r = mats[0].rows
    for m in mats:
        if m.rows != r:
            raise InputError("hstack: row counts differ")
    data = tuple(sum((m.data[i] for m in mats), ()) for i in range(r))
    return Matrix(field, r, sum(m.cols for m in mats), data)


def vstack(field, mats, cols=None):
    if not mats:
        return Matrix.zeros(field, 0, cols or 0)
    c = mats[0].cols
    for m in mats:
        if m.cols != c:
            raise InputError("vstack: column counts differ")
    data = sum((m.data for m in mats), ())
    return Matrix(field, sum(m.rows for m in mats), c, data)


def block_diag(field, mats):
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    z = field.zero
    out = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = m.data[i]
        r0 += m.rows
        c0 += m.cols
    return Matrix(field, rows, cols, tuple(tuple(r) for r in out))


# --- row reduction ---------------------------------------------------------


def _rref_lists(field, rows, ncols):
    """In-place reduced row echelon form of a list of lists.

    Returns the pivot columns. Pivot = first nonzero entry in the column.
    """
    red = _reducer(field)
    inv = field.inv
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        s = inv(pr[c])
        if s != 1:
            pr = rows[r] = [red(x * s) for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    rows[i] = [red(x - f * y) for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m):
    """Return ``(R, pivots)`` with ``R`` in reduced row echelon form."""
    rows = [list(r) for r in m.data]
    pivots = _rref_lists(m.field, rows, m.cols)
    return Matrix(m.field, m.rows, m.cols, tuple(tuple(r) for r in rows)), pivots


def rank(m):
    if m.rows == 0 or m.cols == 0:
        return 0
    # reduce along the shorter side
    if m.rows > m.cols:
        m = m.T
    rows = [list(r) for r in m.data]
    return len(_rref_lists(m.field, rows, m.cols))


def kernel_basis(m):
    """Columns form a basis of ``{x : m x = 0}`` (one per free column)."""
    R, pivots = rref(m)
    field = m.field
    red = _reducer(field)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    for f in free:
        v = [field.zero] * m.cols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = red(-R.data[i][f])
        cols.append(v)
    return Matrix.from_columns(field, cols, m.cols)


def cokernel_projection(m):
    """A full-row-rank ``Q`` with ``ker Q = im m``.

    Rows of ``Q`` are a basis of the left null space of ``m``, read off the
    reduced echelon form of ``m^T``.
    """
    return kernel_basis(m.T).T


def solve(a, b):
    """Some ``x`` with ``a x = b``, or ``None`` when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    a._check_field(b)
    if a.rows != b.rows:
        raise InputError("solve: %d equations but right-hand side has %d rows" % (a.rows, b.rows))
    field = a.field
    aug = [list(ra) + list(rb) for ra, rb in zip(a.data, b.data)]
    pivots = _rref_lists(field, aug, a.cols + b.cols)
    if pivots and pivots[-1] >= a.cols:
        return None
    x = [[field.zero] * b.cols for _ in range(a.cols)]
    for i, pc in enumerate(pivots):
        x[pc] = aug[i][a.cols:]
    return Matrix(field, a.cols, b.cols, tuple(tuple(r) for r in x))


def inverse(m):
    if m.rows != m.cols:
        raise InputError("inverse of a non-square matrix")
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None or rank(m) != m.rows:
        raise InputError("matrix is singular")
    return x


def is_invertible(m):
    return m.rows == m.cols and rank(m) == m.rows


def complete_basis(cols):
    """Extend independent columns to an invertible square matrix.

    The input columns come first; standard basis vectors are appended in
    index order, keeping those that are pivots of ``[cols | I]``.
    """
    n, k = cols.rows, cols.cols
    field = cols.field
    aug = hstack(field, [cols, Matrix.identity(field, n)])
    _, pivots = rref(aug)
    if pivots[:k] != list(range(k)):
        raise InputError("complete_basis: input columns are dependent")
    extra = [j - k for j in pivots[k:]]
    return hstack(field, [cols, Matrix.identity(field, n).select_columns(extra)])

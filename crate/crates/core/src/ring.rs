//! Finite rings given by Cayley tables.
//!
//! Elements are dense indices `0..size` and index `0` is always the additive
//! identity. Every constructor funnels through [`ring_from_tables`], which
//! checks the ring axioms table-wise and derives negation, additive orders,
//! the unit (if any), commutativity and an [`AdditiveBasis`].

use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

/// A ring element, as an index into the carrier.
pub type Elem = usize;

/// Default upper bound on carrier sizes accepted by the catalog and matrix constructors.
pub const DEFAULT_CARRIER_CAP: usize = 256;

/// Largest `n` for which `n!` is computed; `12!` fits easily in a `u64`.
pub const MAX_DEGREE: usize = 12;

/// Ring axiom that a table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveAssociativity,
    AdditiveCommutativity,
    AdditiveInverse,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
    Unit,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::AdditiveIdentity => "additive-identity",
            Axiom::AdditiveAssociativity => "additive-associativity",
            Axiom::AdditiveCommutativity => "additive-commutativity",
            Axiom::AdditiveInverse => "additive-inverse",
            Axiom::MultiplicativeAssociativity => "multiplicative-associativity",
            Axiom::LeftDistributivity => "left-distributivity",
            Axiom::RightDistributivity => "right-distributivity",
            Axiom::Unit => "unit",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("{table} table has shape mismatch: expected {expected}x{expected}")]
    TableShape { table: &'static str, expected: usize },
    #[error("{table} table entry [{row}][{col}] = {value} is outside 0..{size}")]
    EntryOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("axiom {axiom} violated at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<Elem> },
    #[error("carrier of {size} elements exceeds cap {cap}")]
    CarrierTooLarge { size: u128, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Generators `g_i` with orders `d_i` such that every element is uniquely
/// `sum c_i * g_i` with `0 <= c_i < d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditiveBasis {
    generators: Vec<Elem>,
    orders: Vec<usize>,
    #[serde(skip)]
    coords: Vec<Vec<usize>>,
}

impl AdditiveBasis {
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Coordinates of `x` with respect to the generators.
    pub fn coordinates(&self, x: Elem) -> &[usize] {
        &self.coords[x]
    }
}

impl fmt::Display for AdditiveBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (g, d)) in self.generators.iter().zip(&self.orders).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}:{d}")?;
        }
        f.write_str("]")
    }
}

/// A finite ring (associative, not necessarily unital or commutative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    label: String,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    orders: Vec<usize>,
    unit: Option<Elem>,
    commutative: bool,
    basis: AdditiveBasis,
}

impl FiniteRing {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn basis(&self) -> &AdditiveBasis {
        &self.basis
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b])
    }

    /// Additive order of `x`.
    pub fn additive_order(&self, x: Elem) -> usize {
        self.orders[x]
    }

    /// `k * x` as repeated addition, with `k` reduced modulo the order of `x`.
    pub fn scalar(&self, k: u64, x: Elem) -> Elem {
        let k = k % self.orders[x] as u64;
        let mut acc = 0;
        for _ in 0..k {
            acc = self.add(acc, x);
        }
        acc
    }

    /// Left-associated power `x^n` for `n >= 1`.
    pub fn pow(&self, x: Elem, n: usize) -> Elem {
        assert!(n >= 1, "pow needs a positive exponent");
        (1..n).fold(x, |acc, _| self.mul(acc, x))
    }

    /// `c^k * y`, where `c^0 * y` is `y` itself (no unit required).
    pub fn left_pow_mul(&self, c: Elem, k: usize, y: Elem) -> Elem {
        (0..k).fold(y, |acc, _| self.mul(c, acc))
    }

    /// `y * c^k`, where `y * c^0` is `y` itself.
    pub fn right_pow_mul(&self, y: Elem, c: Elem, k: usize) -> Elem {
        (0..k).fold(y, |acc, _| self.mul(acc, c))
    }

    /// Left-associated product of a non-empty slice.
    pub fn product(&self, xs: &[Elem]) -> Elem {
        let (first, rest) = xs.split_first().expect("product of an empty tuple");
        rest.iter().fold(*first, |acc, &x| self.mul(acc, x))
    }

    /// Whether `n! x = 0` forces `x = 0`, i.e. the ring has characteristic greater than `n`.
    ///
    /// Decided by brute force over the carrier and cross-checked against
    /// `gcd(n!, |R|) = 1`, which is equivalent for finite rings by Cauchy's theorem.
    ///
    /// # Panics
    /// If `n` is outside `2..=MAX_DEGREE`.
    pub fn char_exceeds(&self, n: usize) -> bool {
        self.char_witness(n).is_none()
    }

    /// A nonzero `x` with `n! x = 0`, if one exists.
    pub fn char_witness(&self, n: usize) -> Option<Elem> {
        assert!(
            (2..=MAX_DEGREE).contains(&n),
            "degree {n} outside 2..={MAX_DEGREE}"
        );
        let fact = factorial(n);
        let witness = self
            .elements()
            .skip(1)
            .find(|&x| self.scalar(fact, x) == 0);
        assert_eq!(
            witness.is_none(),
            fact.gcd(&(self.size as u64)) == 1,
            "brute-force characteristic test disagrees with gcd criterion on {}",
            self.label
        );
        witness
    }

    /// Re-runs the full axiom validation on the stored tables.
    pub fn validate(&self) -> Result<(), RingError> {
        validate_axioms(self.size, &self.add, &self.mul)?;
        if let Some(e) = self.unit {
            check_unit(self.size, &self.mul, e)?;
        }
        Ok(())
    }

    /// Row-major copy of the addition table.
    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        self.add.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    /// Row-major copy of the multiplication table.
    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.size).map(<[_]>::to_vec).collect()
    }
}

pub fn factorial(n: usize) -> u64 {
    (2..=n as u64).product()
}

/// Builds and validates a ring from explicit tables.
///
/// The additive identity is moved to index `0` if it sits elsewhere; `unit_hint`
/// refers to the input numbering. Without a hint the smallest two-sided unit is
/// detected, if any.
pub fn ring_from_tables(
    size: usize,
    add_table: &[Vec<Elem>],
    mul_table: &[Vec<Elem>],
    unit_hint: Option<Elem>,
    label: impl Into<String>,
) -> Result<FiniteRing, RingError> {
    if size == 0 {
        return Err(RingError::EmptyCarrier);
    }
    let mut add = flatten("add", size, add_table)?;
    let mut mul = flatten("mul", size, mul_table)?;
    if let Some(e) = unit_hint {
        if e >= size {
            return Err(RingError::InvalidParameter(format!(
                "unit hint {e} outside 0..{size}"
            )));
        }
    }

    let zero = (0..size)
        .find(|&z| (0..size).all(|x| add[z * size + x] == x && add[x * size + z] == x))
        .ok_or(RingError::AxiomViolation {
            axiom: Axiom::AdditiveIdentity,
            witness: vec![],
        })?;
    let mut unit_hint = unit_hint;
    if zero != 0 {
        let swap = |x: Elem| match x {
            0 => zero,
            x if x == zero => 0,
            x => x,
        };
        add = renumber(size, &add, swap);
        mul = renumber(size, &mul, swap);
        unit_hint = unit_hint.map(swap);
    }

    validate_axioms(size, &add, &mul)?;

    let unit = match unit_hint {
        Some(e) => {
            check_unit(size, &mul, e)?;
            Some(e)
        }
        None => (0..size).find(|&e| check_unit(size, &mul, e).is_ok()),
    };
    let commutative = (0..size).all(|x| (x + 1..size).all(|y| mul[x * size + y] == mul[y * size + x]));
    let neg = (0..size)
        .map(|x| (0..size).find(|&y| add[x * size + y] == 0).expect("inverse checked"))
        .collect();
    let orders: Vec<usize> = (0..size)
        .map(|x| {
            let mut acc = x;
            let mut k = 1;
            while acc != 0 {
                acc = add[acc * size + x];
                k += 1;
            }
            k
        })
        .collect();
    let basis = compute_basis(size, &add, &orders);

    Ok(FiniteRing {
        label: label.into(),
        size,
        add,
        mul,
        neg,
        orders,
        unit,
        commutative,
        basis,
    })
}

fn flatten(table: &'static str, size: usize, rows: &[Vec<Elem>]) -> Result<Vec<Elem>, RingError> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(RingError::TableShape {
            table,
            expected: size,
        });
    }
    let mut flat = Vec::with_capacity(size * size);
    for (row, r) in rows.iter().enumerate() {
        for (col, &value) in r.iter().enumerate() {
            if value >= size {
                return Err(RingError::EntryOutOfRange {
                    table,
                    row,
                    col,
                    value,
                    size,
                });
            }
            flat.push(value);
        }
    }
    Ok(flat)
}

fn renumber(size: usize, table: &[Elem], perm: impl Fn(Elem) -> Elem) -> Vec<Elem> {
    // perm is an involution, so it is its own inverse
    let mut out = vec![0; size * size];
    for a in 0..size {
        for b in 0..size {
            out[perm(a) * size + perm(b)] = perm(table[a * size + b]);
        }
    }
    out
}

fn violation(axiom: Axiom, witness: Vec<Elem>) -> RingError {
    RingError::AxiomViolation { axiom, witness }
}

fn validate_axioms(size: usize, add: &[Elem], mul: &[Elem]) -> Result<(), RingError> {
    let a = |x: Elem, y: Elem| add[x * size + y];
    let m = |x: Elem, y: Elem| mul[x * size + y];
    for x in 0..size {
        if a(0, x) != x || a(x, 0) != x {
            return Err(violation(Axiom::AdditiveIdentity, vec![x]));
        }
        if !(0..size).any(|y| a(x, y) == 0) {
            return Err(violation(Axiom::AdditiveInverse, vec![x]));
        }
        for y in 0..size {
            if a(x, y) != a(y, x) {
                return Err(violation(Axiom::AdditiveCommutativity, vec![x, y]));
            }
        }
    }
    for x in 0..size {
        for y in 0..size {
            let xy_add = a(x, y);
            let xy_mul = m(x, y);
            for z in 0..size {
                if a(xy_add, z) != a(x, a(y, z)) {
                    return Err(violation(Axiom::AdditiveAssociativity, vec![x, y, z]));
                }
                if m(xy_mul, z) != m(x, m(y, z)) {
                    return Err(violation(Axiom::MultiplicativeAssociativity, vec![x, y, z]));
                }
                if m(x, a(y, z)) != a(xy_mul, m(x, z)) {
                    return Err(violation(Axiom::LeftDistributivity, vec![x, y, z]));
                }
                if m(xy_add, z) != a(m(x, z), m(y, z)) {
                    return Err(violation(Axiom::RightDistributivity, vec![x, y, z]));
                }
            }
        }
    }
    Ok(())
}

fn check_unit(size: usize, mul: &[Elem], e: Elem) -> Result<(), RingError> {
    match (0..size).find(|&x| mul[e * size + x] != x || mul[x * size + e] != x) {
        Some(x) => Err(violation(Axiom::Unit, vec![e, x])),
        None => Ok(()),
    }
}

/// Direct-sum decomposition of the additive group.
///
/// Repeatedly takes the coset of largest order in the quotient by the span so
/// far and lifts it to a representative whose actual order equals that
/// quotient order. Ties go to the smallest index, so the result is canonical.
fn compute_basis(size: usize, add: &[Elem], orders: &[usize]) -> AdditiveBasis {
    let a = |x: Elem, y: Elem| add[x * size + y];
    let multiple = |k: usize, x: Elem| (0..k).fold(0, |acc, _| a(acc, x));

    let mut in_span = vec![false; size];
    in_span[0] = true;
    let mut span = vec![0];
    let mut generators = Vec::new();
    let mut gen_orders = Vec::new();

    while span.len() < size {
        let quotient_order = |x: Elem| {
            let mut acc = x;
            let mut k = 1;
            while !in_span[acc] {
                acc = a(acc, x);
                k += 1;
            }
            k
        };
        let mut cosets: Vec<(usize, Elem)> = (0..size)
            .filter(|&x| !in_span[x])
            .map(|x| (quotient_order(x), x))
            .collect();
        // largest quotient order first, then smallest index
        cosets.sort_by(|p, q| q.0.cmp(&p.0).then(p.1.cmp(&q.1)));
        let q = cosets[0].0;
        let generator = cosets
            .iter()
            .take_while(|(k, _)| *k == q)
            .flat_map(|&(_, x)| span.iter().map(move |&s| (x, s)))
            .map(|(x, s)| a(x, s))
            .filter(|&y| orders[y] == q)
            .min()
            .expect("a coset of maximal quotient order has a lift of equal order");

        let mut next = Vec::with_capacity(span.len() * q);
        for c in 0..q {
            let shift = multiple(c, generator);
            for &s in &span {
                next.push(a(s, shift));
            }
        }
        for &y in &next {
            in_span[y] = true;
        }
        span = next;
        generators.push(generator);
        gen_orders.push(q);
    }

    let mut coords = vec![Vec::new(); size];
    let mut seen = vec![false; size];
    let mut digits = vec![0usize; generators.len()];
    loop {
        let x = generators
            .iter()
            .zip(&digits)
            .fold(0, |acc, (&g, &c)| a(acc, multiple(c, g)));
        assert!(!seen[x], "basis representation is not unique");
        seen[x] = true;
        coords[x] = digits.clone();
        // mixed-radix increment, first coordinate fastest
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < gen_orders[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    debug_assert!(seen.iter().all(|&s| s));

    AdditiveBasis {
        generators,
        orders: gen_orders,
        coords,
    }
}

/// The additive basis of `ring` (computed once at construction).
pub fn additive_group_basis(ring: &FiniteRing) -> &AdditiveBasis {
    ring.basis()
}

/// `Z/mZ`. For `m = 1` this is the zero ring, whose single element is its unit.
pub fn cyclic_ring(m: usize) -> Result<FiniteRing, RingError> {
    if m == 0 {
        return Err(RingError::InvalidParameter("modulus must be positive".into()));
    }
    let add: Vec<Vec<Elem>> = (0..m).map(|x| (0..m).map(|y| (x + y) % m).collect()).collect();
    let mul: Vec<Vec<Elem>> = (0..m).map(|x| (0..m).map(|y| (x * y) % m).collect()).collect();
    ring_from_tables(m, &add, &mul, Some(1 % m), format!("Z{m}"))
}

/// The additive group of `Z/mZ` with all products zero.
pub fn zero_product_ring(m: usize) -> Result<FiniteRing, RingError> {
    if m == 0 {
        return Err(RingError::InvalidParameter("modulus must be positive".into()));
    }
    let add: Vec<Vec<Elem>> = (0..m).map(|x| (0..m).map(|y| (x + y) % m).collect()).collect();
    let mul = vec![vec![0; m]; m];
    ring_from_tables(m, &add, &mul, None, format!("N{m}"))
}

/// Componentwise product; the pair `(i, j)` has index `i * |b| + j`.
pub fn direct_product(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing, RingError> {
    let (sa, sb) = (a.size(), b.size());
    let size = sa * sb;
    let pair = |i: Elem, j: Elem| i * sb + j;
    let split = |x: Elem| (x / sb, x % sb);
    let table = |op: &dyn Fn(Elem, Elem, Elem, Elem) -> Elem| -> Vec<Vec<Elem>> {
        (0..size)
            .map(|x| {
                let (xa, xb) = split(x);
                (0..size)
                    .map(|y| {
                        let (ya, yb) = split(y);
                        op(xa, xb, ya, yb)
                    })
                    .collect()
            })
            .collect()
    };
    let add = table(&|xa, xb, ya, yb| pair(a.add(xa, ya), b.add(xb, yb)));
    let mul = table(&|xa, xb, ya, yb| pair(a.mul(xa, ya), b.mul(xb, yb)));
    let unit = a.unit().zip(b.unit()).map(|(ea, eb)| pair(ea, eb));
    let ring = ring_from_tables(size, &add, &mul, unit, format!("{}x{}", a.label(), b.label()))?;
    if unit.is_none() {
        debug_assert!(ring.unit().is_none());
    }
    Ok(ring)
}

/// `M_k(Z/mZ)` under the default carrier cap.
pub fn matrix_ring(m: usize, k: usize) -> Result<FiniteRing, RingError> {
    matrix_ring_with_cap(m, k, DEFAULT_CARRIER_CAP)
}

/// `M_k(Z/mZ)`. A matrix is encoded by its row-major entries read as base-`m`
/// digits, first entry most significant.
pub fn matrix_ring_with_cap(m: usize, k: usize, cap: usize) -> Result<FiniteRing, RingError> {
    if m < 2 || k < 1 {
        return Err(RingError::InvalidParameter(format!(
            "matrix ring needs modulus >= 2 and dim >= 1, got m={m}, k={k}"
        )));
    }
    let entries = k * k;
    let size = (m as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(RingError::CarrierTooLarge { size, cap });
    }
    let size = size as usize;
    let decode = |x: Elem| -> Vec<usize> {
        let mut digits = vec![0; entries];
        let mut rest = x;
        for d in digits.iter_mut().rev() {
            *d = rest % m;
            rest /= m;
        }
        digits
    };
    let encode = |digits: &[usize]| digits.iter().fold(0, |acc, &d| acc * m + d);
    let mats: Vec<Vec<usize>> = (0..size).map(decode).collect();

    let add: Vec<Vec<Elem>> = mats
        .iter()
        .map(|x| {
            mats.iter()
                .map(|y| encode(&x.iter().zip(y).map(|(p, q)| (p + q) % m).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let mul: Vec<Vec<Elem>> = mats
        .iter()
        .map(|x| {
            mats.iter()
                .map(|y| {
                    let prod: Vec<usize> = (0..entries)
                        .map(|p| {
                            let (r, c) = (p / k, p % k);
                            (0..k).map(|t| x[r * k + t] * y[t * k + c]).sum::<usize>() % m
                        })
                        .collect();
                    encode(&prod)
                })
                .collect()
        })
        .collect();
    let identity: Vec<usize> = (0..entries).map(|p| usize::from(p / k == p % k)).collect();
    ring_from_tables(size, &add, &mul, Some(encode(&identity)), format!("M{k}Z{m}"))
}

/// Index of the `k x k` matrix with the given row-major entries in [`matrix_ring`].
pub fn matrix_index(m: usize, entries: &[usize]) -> Elem {
    entries.iter().fold(0, |acc, &d| acc * m + d % m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod_tables(m: usize) -> (Vec<Vec<Elem>>, Vec<Vec<Elem>>) {
        let add = (0..m).map(|x| (0..m).map(|y| (x + y) % m).collect()).collect();
        let mul = (0..m).map(|x| (0..m).map(|y| (x * y) % m).collect()).collect();
        (add, mul)
    }

    #[test]
    fn one_element_ring_is_unital() {
        let r = ring_from_tables(1, &[vec![0]], &[vec![0]], None, "zero").unwrap();
        assert_eq!(r.unit(), Some(0));
        assert!(r.is_commutative());
        assert!(r.basis().is_empty());
    }

    #[test]
    fn z2_from_tables() {
        let (add, mul) = zmod_tables(2);
        let r = ring_from_tables(2, &add, &mul, None, "Z2").unwrap();
        assert_eq!(r.unit(), Some(1));
        assert!(r.is_commutative());
    }

    #[test]
    fn zero_multiplication_has_no_unit() {
        let (add, _) = zmod_tables(2);
        let r = ring_from_tables(2, &add, &[vec![0, 0], vec![0, 0]], None, "N2").unwrap();
        assert_eq!(r.unit(), None);
        // brute-force distributivity over all triples
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
                }
            }
        }
    }

    #[test]
    fn identity_is_renumbered_to_zero() {
        // Z3 with labels shifted: input element i stands for residue (i + 1) mod 3
        let add: Vec<Vec<Elem>> = (0..3)
            .map(|x| (0..3).map(|y| ((x + 1) + (y + 1)) % 3).map(|r| (r + 2) % 3).collect())
            .collect();
        let mul: Vec<Vec<Elem>> = (0..3)
            .map(|x| (0..3).map(|y| ((x + 1) * (y + 1)) % 3).map(|r| (r + 2) % 3).collect())
            .collect();
        let r = ring_from_tables(3, &add, &mul, Some(0), "Z3'").unwrap();
        assert_eq!(r.add(0, 1), 1);
        assert!(r.unit().is_some());
        assert_eq!(r.size(), 3);
    }

    #[test]
    fn broken_tables_are_rejected() {
        let (add, _) = zmod_tables(3);
        // x*y = 1 for all pairs breaks distributivity
        let mul = vec![vec![1; 3]; 3];
        assert!(matches!(
            ring_from_tables(3, &add, &mul, None, "bad"),
            Err(RingError::AxiomViolation { .. })
        ));
        let bad_add = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            ring_from_tables(2, &bad_add, &[vec![0, 0], vec![0, 0]], None, "bad"),
            Err(RingError::AxiomViolation {
                axiom: Axiom::AdditiveInverse,
                ..
            })
        ));
        assert!(matches!(
            ring_from_tables(2, &[vec![0, 1]], &[vec![0, 0], vec![0, 0]], None, "bad"),
            Err(RingError::TableShape { .. })
        ));
        assert!(matches!(
            ring_from_tables(2, &[vec![0, 1], vec![1, 5]], &[vec![0, 0], vec![0, 0]], None, "bad"),
            Err(RingError::EntryOutOfRange { value: 5, .. })
        ));
        let (add, mul) = zmod_tables(4);
        assert!(matches!(
            ring_from_tables(4, &add, &mul, Some(2), "Z4"),
            Err(RingError::AxiomViolation { axiom: Axiom::Unit, .. })
        ));
    }

    #[test]
    fn cyclic_rings() {
        let z6 = cyclic_ring(6).unwrap();
        assert_eq!((z6.size(), z6.unit(), z6.is_commutative()), (6, Some(1), true));
        assert_eq!(z6.basis().generators(), &[1]);
        assert_eq!(z6.basis().orders(), &[6]);
        let z7 = cyclic_ring(7).unwrap();
        assert_eq!(z7.mul(3, 5), 1);
        let z1 = cyclic_ring(1).unwrap();
        assert_eq!((z1.size(), z1.unit()), (1, Some(0)));
        assert!(cyclic_ring(0).is_err());
    }

    #[test]
    fn boolean_product() {
        let z2 = cyclic_ring(2).unwrap();
        let v = direct_product(&z2, &z2).unwrap();
        assert_eq!(v.size(), 4);
        assert!(v.is_commutative());
        assert_eq!(v.unit(), Some(3));
        assert!(v.elements().all(|x| v.mul(x, x) == x));
        assert_eq!(v.basis().orders(), &[2, 2]);
    }

    #[test]
    fn product_with_nonunital_factor() {
        let z2 = cyclic_ring(2).unwrap();
        let n2 = zero_product_ring(2).unwrap();
        let p = direct_product(&z2, &n2).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.unit(), None);
    }

    #[test]
    fn product_with_zero_ring_keeps_tables() {
        let z6 = cyclic_ring(6).unwrap();
        let p = direct_product(&z6, &cyclic_ring(1).unwrap()).unwrap();
        assert_eq!(p.add_table(), z6.add_table());
        assert_eq!(p.mul_table(), z6.mul_table());
        assert_eq!(p.unit(), z6.unit());
    }

    #[test]
    fn matrix_rings() {
        let m = matrix_ring(2, 2).unwrap();
        assert_eq!(m.size(), 16);
        assert!(!m.is_commutative());
        assert_eq!(m.unit(), Some(matrix_index(2, &[1, 0, 0, 1])));
        let e12 = matrix_index(2, &[0, 1, 0, 0]);
        let e21 = matrix_index(2, &[0, 0, 1, 0]);
        assert_ne!(m.mul(e12, e21), m.mul(e21, e12));
        assert_eq!(m.basis().orders(), &[2, 2, 2, 2]);
        for &g in m.basis().generators() {
            assert_eq!(g.count_ones(), 1, "generator {g} is an elementary matrix");
        }

        let m31 = matrix_ring(3, 1).unwrap();
        let z3 = cyclic_ring(3).unwrap();
        assert_eq!(m31.add_table(), z3.add_table());
        assert_eq!(m31.mul_table(), z3.mul_table());

        assert_eq!(
            matrix_ring(2, 4),
            Err(RingError::CarrierTooLarge {
                size: 65536,
                cap: 256
            })
        );
    }

    #[test]
    fn non_cyclic_group_decomposes() {
        // Z4 x Z2 is the classic case where naive greedy choice fails.
        let p = direct_product(&cyclic_ring(4).unwrap(), &cyclic_ring(2).unwrap()).unwrap();
        let mut orders = p.basis().orders().to_vec();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 4]);
        for (&g, &d) in p.basis().generators().iter().zip(p.basis().orders()) {
            assert_eq!(p.additive_order(g), d);
        }
    }

    #[test]
    fn characteristic_examples() {
        let z7 = cyclic_ring(7).unwrap();
        assert!(z7.char_exceeds(2));
        assert!(!z7.char_exceeds(7));
        let z6 = cyclic_ring(6).unwrap();
        assert_eq!(z6.char_witness(2), Some(3));
        assert!(cyclic_ring(1).unwrap().char_exceeds(12));
    }

    #[test]
    #[should_panic]
    fn characteristic_rejects_large_degree() {
        cyclic_ring(5).unwrap().char_exceeds(13);
    }

    #[test]
    fn scalar_reduces_by_order() {
        let z7 = cyclic_ring(7).unwrap();
        assert_eq!(z7.scalar(factorial(12), 3), (479_001_600u64 % 7 * 3 % 7) as usize);
        assert_eq!(z7.scalar(0, 3), 0);
    }
}

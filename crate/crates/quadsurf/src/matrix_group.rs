//! 2×2 matrices over R, finite-order detection, eigenvalue classification by
//! (det, tr), closure of finitely generated linear groups and catalog
//! recognition.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::quad_order::{ratio, unit_to_root, QuadElem, RingSpec, RootOfUnity};

/// Default closure bound for linear groups.
pub const DEFAULT_LINEAR_CAP: usize = 256;

/// A 2×2 matrix over R, entries in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    e: [QuadElem; 4],
}

impl Mat2 {
    pub fn new(m11: QuadElem, m12: QuadElem, m21: QuadElem, m22: QuadElem) -> Result<Self> {
        let ring = m11.ring();
        if [&m12, &m21, &m22].iter().any(|x| x.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        if [&m11, &m12, &m21, &m22].iter().any(|x| !x.is_integral()) {
            return Err(Error::NotIntegral);
        }
        Ok(Mat2 { e: [m11, m12, m21, m22] })
    }

    /// Builds a matrix from integer θ-coordinates [(a, b); 4].
    pub fn from_coords(ring: RingSpec, c: [(i64, i64); 4]) -> Result<Self> {
        let [x, y, z, w] = c;
        Mat2::new(
            ring.elem(x.0, x.1)?,
            ring.elem(y.0, y.1)?,
            ring.elem(z.0, z.1)?,
            ring.elem(w.0, w.1)?,
        )
    }

    /// Builds a matrix over Z-valued entries embedded in `ring`.
    pub fn from_ints(ring: RingSpec, c: [[i64; 2]; 2]) -> Self {
        Mat2 {
            e: [ring.int(c[0][0]), ring.int(c[0][1]), ring.int(c[1][0]), ring.int(c[1][1])],
        }
    }

    pub fn identity(ring: RingSpec) -> Self {
        Mat2::scalar(&ring.one())
    }

    pub fn scalar(x: &QuadElem) -> Self {
        let z = x.ring().zero();
        Mat2 { e: [x.clone(), z.clone(), z, x.clone()] }
    }

    pub fn diag(x: &QuadElem, y: &QuadElem) -> Self {
        let z = x.ring().zero();
        Mat2 { e: [x.clone(), z.clone(), z, y.clone()] }
    }

    pub fn ring(&self) -> RingSpec {
        self.e[0].ring()
    }

    pub fn entries(&self) -> &[QuadElem; 4] {
        &self.e
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadElem {
        &self.e[2 * i + j]
    }

    pub fn det(&self) -> QuadElem {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    pub fn trace(&self) -> QuadElem {
        &self.e[0] + &self.e[3]
    }

    pub fn is_identity(&self) -> bool {
        self.e[0].is_one() && self.e[3].is_one() && self.e[1].is_zero() && self.e[2].is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.e[1].is_zero() && self.e[2].is_zero() && self.e[0] == self.e[3]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.e;
        let [x, y, z, w] = &o.e;
        Mat2 {
            e: [
                &(a * x) + &(b * z),
                &(a * y) + &(b * w),
                &(c * x) + &(d * z),
                &(c * y) + &(d * w),
            ],
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 { e: self.e.clone().map(|x| -&x) }
    }

    pub fn scale(&self, s: &QuadElem) -> Mat2 {
        Mat2 { e: self.e.clone().map(|x| &x * s) }
    }

    /// Inverse over R: adjugate divided by a unit determinant.
    pub fn inv(&self) -> Result<Mat2> {
        let det = self.det();
        if !det.is_unit() {
            return Err(Error::NotInvertibleInR);
        }
        let di = det.inverse().ok_or(Error::NotInvertibleInR)?;
        let [a, b, c, d] = &self.e;
        Ok(Mat2 { e: [d * &di, &(-b) * &di, &(-c) * &di, a * &di] })
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        let mut acc = Mat2::identity(self.ring());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_gl(&self) -> bool {
        self.det().is_unit()
    }

    pub fn conjugate_by(&self, p: &Mat2) -> Result<Mat2> {
        Ok(p.mul(self).mul(&p.inv()?))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e[0], self.e[1], self.e[2], self.e[3])
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&[&self.e[0], &self.e[1]])?;
        seq.serialize_element(&[&self.e[2], &self.e[3]])?;
        seq.end()
    }
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    a.mul(b)
}

pub fn mat_inv(a: &Mat2) -> Result<Mat2> {
    a.inv()
}

/// Least n ≤ 12 with mⁿ = I, or None (infinite order).
pub fn element_order(m: &Mat2) -> Option<u32> {
    if let Some(n) = SmallMat::from_mat(m).and_then(|s| s.order()) {
        return n;
    }
    // Eigenvalues of a finite-order element are roots of unity: N(det) = 1, |tr| ≤ 2.
    if !m.det().norm().is_one() || m.trace().norm() > ratio(4, 1) {
        return None;
    }
    let mut acc = m.clone();
    for n in 1..=12 {
        if acc.is_identity() {
            return Some(n);
        }
        acc = acc.mul(m);
    }
    if cfg!(debug_assertions) {
        for n in 13..=24 {
            assert!(!acc.is_identity(), "element of order {} found: {}", n, m);
            acc = acc.mul(m);
        }
    }
    None
}

/// θ-coordinates in checked i128 arithmetic.
#[derive(Clone, Copy, PartialEq, Eq)]
struct SmallMat {
    p: i128,
    q: i128,
    e: [(i128, i128); 4],
}

impl SmallMat {
    const ONE: [(i128, i128); 4] = [(1, 0), (0, 0), (0, 0), (1, 0)];

    fn from_mat(m: &Mat2) -> Option<SmallMat> {
        let r = m.ring();
        let mut e = [(0, 0); 4];
        for (x, y) in e.iter_mut().zip(m.entries()) {
            let (a, b) = y.int_coords().ok()?;
            *x = (a as i128, b as i128);
        }
        Some(SmallMat { p: r.p() as i128, q: r.q() as i128, e })
    }

    fn emul(&self, x: (i128, i128), y: (i128, i128)) -> Option<(i128, i128)> {
        let bd = x.1.checked_mul(y.1)?;
        let a = x.0.checked_mul(y.0)?.checked_add(bd.checked_mul(self.q)?)?;
        let b = x.0.checked_mul(y.1)?.checked_add(x.1.checked_mul(y.0)?)?.checked_add(bd.checked_mul(self.p)?)?;
        Some((a, b))
    }

    fn dot(&self, x: (i128, i128), y: (i128, i128), z: (i128, i128), w: (i128, i128)) -> Option<(i128, i128)> {
        let (u, v) = (self.emul(x, y)?, self.emul(z, w)?);
        Some((u.0.checked_add(v.0)?, u.1.checked_add(v.1)?))
    }

    fn mul(&self, o: &SmallMat) -> Option<SmallMat> {
        let [a, b, c, d] = self.e;
        let [x, y, z, w] = o.e;
        let e = [self.dot(a, x, b, z)?, self.dot(a, y, b, w)?, self.dot(c, x, d, z)?, self.dot(c, y, d, w)?];
        Some(SmallMat { e, ..*self })
    }

    fn norm(&self, x: (i128, i128)) -> Option<i128> {
        let (a, b) = x;
        a.checked_mul(a)?.checked_add(a.checked_mul(b)?.checked_mul(self.p)?)?.checked_sub(b.checked_mul(b)?.checked_mul(self.q)?)
    }

    /// Some(order) when decided without overflow.
    fn order(&self) -> Option<Option<u32>> {
        let [a, b, c, d] = self.e;
        let ad = self.emul(a, d)?;
        let bc = self.emul(b, c)?;
        let det = (ad.0.checked_sub(bc.0)?, ad.1.checked_sub(bc.1)?);
        let tr = (a.0.checked_add(d.0)?, a.1.checked_add(d.1)?);
        if self.norm(det)? != 1 || self.norm(tr)? > 4 {
            return Some(None);
        }
        let mut acc = *self;
        for n in 1..=12 {
            if acc.e == Self::ONE {
                return Some(Some(n));
            }
            acc = acc.mul(self)?;
        }
        if cfg!(debug_assertions) {
            for n in 13..=24 {
                assert!(acc.e != Self::ONE, "element of order {} found", n);
                acc = acc.mul(self)?;
            }
        }
        Some(None)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let (mut n, mut out) = (n, n);
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn has_eigenvalue_one(m: &Mat2) -> bool {
    m.trace() == &m.det() + &m.ring().one()
}

/// Eigenvalues and order of a finite-order element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, DeriveSerialize)]
pub struct EigenClass {
    pub lambda1: RootOfUnity,
    pub lambda2: RootOfUnity,
    pub order: u32,
}

impl EigenClass {
    /// The unordered eigenvalue pair, smaller argument first.
    pub fn pair(&self) -> EigenPair {
        EigenPair::new(self.lambda1, self.lambda2)
    }
}

/// An unordered pair of roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, DeriveSerialize)]
pub struct EigenPair(pub RootOfUnity, pub RootOfUnity);

impl EigenPair {
    pub fn new(a: RootOfUnity, b: RootOfUnity) -> Self {
        let key = |r: &RootOfUnity| (r.k() as u64 * 24 / r.n() as u64, r.k(), r.n());
        if key(&a) <= key(&b) {
            EigenPair(a, b)
        } else {
            EigenPair(b, a)
        }
    }

    pub fn from_24(a: i64, b: i64) -> Self {
        EigenPair::new(RootOfUnity::from_24(a), RootOfUnity::from_24(b))
    }

    pub fn conj(&self) -> Self {
        EigenPair::new(self.0.conj(), self.1.conj())
    }

    pub fn contains_one(&self) -> bool {
        self.0 == RootOfUnity::one() || self.1 == RootOfUnity::one()
    }
}

impl fmt::Display for EigenPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

/// Which rings a table row applies to.
#[derive(Clone, Copy, Debug)]
enum RowRing {
    Any,
    D(u64),
}

/// One row of the (det, tr) table: det and eigenvalues in 24ths of a turn,
/// trace as a + c·√−d with (numerator, denominator) pairs.
struct EigenRow {
    det: i64,
    ring: RowRing,
    tr_a: (i64, i64),
    tr_c: (i64, i64),
    lam: (i64, i64),
    order: u32,
    scalar: bool,
}

const fn row(
    det: i64,
    ring: RowRing,
    tr_a: (i64, i64),
    tr_c: (i64, i64),
    lam: (i64, i64),
    order: u32,
    scalar: bool,
) -> EigenRow {
    EigenRow { det, ring, tr_a, tr_c, lam, order, scalar }
}

const Z0: (i64, i64) = (0, 1);

static EIGEN_TABLE: &[EigenRow] = &[
    // det 1
    row(0, RowRing::Any, (2, 1), Z0, (0, 0), 1, true),
    row(0, RowRing::Any, (-2, 1), Z0, (12, 12), 2, true),
    row(0, RowRing::Any, (1, 1), Z0, (4, 20), 6, false),
    row(0, RowRing::Any, (-1, 1), Z0, (8, 16), 3, false),
    row(0, RowRing::Any, Z0, Z0, (6, 18), 4, false),
    // det -1
    row(12, RowRing::Any, Z0, Z0, (12, 0), 2, false),
    row(12, RowRing::D(2), Z0, (1, 1), (3, 9), 8, false),
    row(12, RowRing::D(2), Z0, (-1, 1), (15, 21), 8, false),
    row(12, RowRing::D(1), Z0, (2, 1), (6, 6), 4, true),
    row(12, RowRing::D(1), Z0, (-2, 1), (18, 18), 4, true),
    row(12, RowRing::D(1), Z0, (1, 1), (2, 10), 12, false),
    row(12, RowRing::D(1), Z0, (-1, 1), (14, 22), 12, false),
    row(12, RowRing::D(3), Z0, (1, 1), (4, 8), 6, false),
    row(12, RowRing::D(3), Z0, (-1, 1), (16, 20), 6, false),
    // det i
    row(6, RowRing::D(1), Z0, Z0, (9, 21), 8, false),
    row(6, RowRing::D(1), (1, 1), (1, 1), (6, 0), 4, false),
    row(6, RowRing::D(1), (-1, 1), (-1, 1), (18, 12), 4, false),
    // det -i
    row(18, RowRing::D(1), Z0, Z0, (3, 15), 8, false),
    row(18, RowRing::D(1), (1, 1), (-1, 1), (18, 0), 4, false),
    row(18, RowRing::D(1), (-1, 1), (1, 1), (6, 12), 4, false),
    // det e^{πi/3}
    row(4, RowRing::D(3), Z0, Z0, (8, 20), 6, false),
    row(4, RowRing::D(3), (3, 2), (1, 2), (4, 0), 6, false),
    row(4, RowRing::D(3), (-3, 2), (-1, 2), (16, 12), 6, false),
    // det e^{-πi/3}
    row(20, RowRing::D(3), Z0, Z0, (4, 16), 6, false),
    row(20, RowRing::D(3), (3, 2), (-1, 2), (20, 0), 6, false),
    row(20, RowRing::D(3), (-3, 2), (1, 2), (8, 12), 6, false),
    // det e^{2πi/3}
    row(8, RowRing::D(3), Z0, Z0, (10, 22), 12, false),
    row(8, RowRing::D(3), (1, 2), (1, 2), (8, 0), 3, false),
    row(8, RowRing::D(3), (-1, 1), (-1, 1), (16, 16), 3, true),
    row(8, RowRing::D(3), (-1, 2), (-1, 2), (20, 12), 6, false),
    row(8, RowRing::D(3), (1, 1), (1, 1), (4, 4), 6, true),
    // det e^{-2πi/3}
    row(16, RowRing::D(3), Z0, Z0, (2, 14), 12, false),
    row(16, RowRing::D(3), (1, 2), (-1, 2), (16, 0), 3, false),
    row(16, RowRing::D(3), (-1, 1), (1, 1), (8, 8), 3, true),
    row(16, RowRing::D(3), (-1, 2), (1, 2), (4, 12), 6, false),
    row(16, RowRing::D(3), (1, 1), (-1, 1), (20, 20), 6, true),
];

/// Looks up (det, tr) in the eigenvalue table. None means infinite order.
pub fn eigen_classify(m: &Mat2) -> Result<Option<EigenClass>> {
    let ring = m.ring();
    let det = m.det();
    let root = unit_to_root(&det).map_err(|_| Error::DetNotUnit)?;
    let det24 = match root.in_24ths() {
        Some(v) => v as i64,
        None => return Ok(None),
    };
    let tr = m.trace();
    for r in EIGEN_TABLE.iter().filter(|r| r.det == det24) {
        let applies = match r.ring {
            RowRing::Any => true,
            RowRing::D(d) => ring.d() == d,
        };
        if !applies {
            continue;
        }
        let a = ratio(r.tr_a.0, r.tr_a.1);
        let c = ratio(r.tr_c.0, r.tr_c.1);
        let expected = if c.is_zero() { ring.rational(a) } else { ring.from_surd(a, c)? };
        if expected != tr {
            continue;
        }
        if r.scalar && !m.is_scalar() {
            return Ok(None);
        }
        return Ok(Some(EigenClass {
            lambda1: RootOfUnity::from_24(r.lam.0),
            lambda2: RootOfUnity::from_24(r.lam.1),
            order: r.order,
        }));
    }
    Ok(None)
}

/// A finite subgroup of GL(2,R) with its closure data.
#[derive(Clone, Debug)]
pub struct LinearGroup {
    pub ring: RingSpec,
    pub elements: Vec<Mat2>,
    pub generators: Vec<Mat2>,
    pub sl_part: Vec<Mat2>,
    pub s: usize,
}

impl LinearGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.elements.contains(m)
    }

    pub fn det_image(&self) -> BTreeSet<RootOfUnity> {
        self.elements.iter().filter_map(|m| unit_to_root(&m.det()).ok()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.generators.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn element_orders(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for m in &self.elements {
            *out.entry(element_order(m).unwrap_or(0)).or_insert(0) += 1;
        }
        out
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u32;
        self.elements.iter().any(|m| element_order(m) == Some(n))
    }

    /// Elements whose determinant generates the determinant image.
    pub fn det_generators(&self) -> Vec<&Mat2> {
        let s = self.s as u32;
        self.elements
            .iter()
            .filter(|m| unit_to_root(&m.det()).map(|r| r.order() == s).unwrap_or(false))
            .collect()
    }
}

/// Breadth-first closure of the group generated by `generators`.
pub fn close_linear(ring: RingSpec, generators: &[Mat2], cap: usize) -> Result<LinearGroup> {
    for (i, g) in generators.iter().enumerate() {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if !g.is_gl() {
            return Err(Error::NotInvertibleInR);
        }
        if element_order(g).is_none() {
            return Err(Error::InfiniteOrderGenerator(i));
        }
    }
    let id = Mat2::identity(ring);
    let mut seen: HashSet<Mat2> = HashSet::new();
    let mut elements = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if elements.len() >= cap {
                    return Err(Error::GroupExceedsCap(cap));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    let one = ring.one();
    let sl_part: Vec<Mat2> = elements.iter().filter(|m| m.det() == one).cloned().collect();
    let dets: HashSet<QuadElem> = elements.iter().map(|m| m.det()).collect();
    Ok(LinearGroup {
        ring,
        s: dets.len(),
        elements,
        generators: generators.to_vec(),
        sl_part,
    })
}

/// Catalog families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    K,
    HC1,
    HC2,
    HC3,
    HC4,
    HC6,
    HQ8,
    HQ12,
    HSL23,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::K,
        Family::HC1,
        Family::HC2,
        Family::HC3,
        Family::HC4,
        Family::HC6,
        Family::HQ8,
        Family::HQ12,
        Family::HSL23,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::K => "K",
            Family::HC1 => "HC1",
            Family::HC2 => "HC2",
            Family::HC3 => "HC3",
            Family::HC4 => "HC4",
            Family::HC6 => "HC6",
            Family::HQ8 => "HQ8",
            Family::HQ12 => "HQ12",
            Family::HSL23 => "HSL23",
        }
    }

    pub fn max_index(&self) -> u32 {
        match self {
            Family::K => 8,
            Family::HC1 => 4,
            Family::HC2 => 7,
            Family::HC3 => 5,
            Family::HC4 => 9,
            Family::HC6 => 7,
            Family::HQ8 => 9,
            Family::HQ12 => 10,
            Family::HSL23 => 9,
        }
    }

    /// The family of groups whose SL part is K_j.
    pub fn over_sl(k: u32) -> Option<Family> {
        Some(match k {
            1 => Family::HC1,
            2 => Family::HC2,
            3 => Family::HC4,
            4 => Family::HQ8,
            5 => Family::HC3,
            6 => Family::HC6,
            7 => Family::HQ12,
            8 => Family::HSL23,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalogLabel {
    pub family: Family,
    pub index: u32,
}

impl CatalogLabel {
    pub fn new(family: Family, index: u32) -> Result<Self> {
        if index == 0 || index > family.max_index() {
            return Err(Error::UnknownLabel(format!("{}({})", family.name(), index)));
        }
        Ok(CatalogLabel { family, index })
    }

    pub fn k(index: u32) -> Self {
        CatalogLabel::new(Family::K, index).expect("K index out of range")
    }
}

impl fmt::Display for CatalogLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::K => write!(f, "K{}", self.index),
            fam => write!(f, "{}({})", fam.name(), self.index),
        }
    }
}

impl FromStr for CatalogLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnknownLabel(s.to_string());
        if let Some(rest) = t.strip_prefix('K') {
            let idx = rest.trim_start_matches('(').trim_end_matches(')');
            return CatalogLabel::new(Family::K, idx.parse().map_err(|_| bad())?);
        }
        let (name, rest) = t.split_once('(').ok_or_else(bad)?;
        let idx: u32 = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let family = Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(name))
            .ok_or_else(bad)?;
        CatalogLabel::new(family, idx)
    }
}

impl Serialize for CatalogLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// (order, element-order multiset) for K1..K8.
fn k_profile(index: u32) -> (usize, &'static [(u32, usize)]) {
    match index {
        1 => (1, &[(1, 1)]),
        2 => (2, &[(1, 1), (2, 1)]),
        3 => (4, &[(1, 1), (2, 1), (4, 2)]),
        4 => (8, &[(1, 1), (2, 1), (4, 6)]),
        5 => (3, &[(1, 1), (3, 2)]),
        6 => (6, &[(1, 1), (2, 1), (3, 2), (6, 2)]),
        7 => (12, &[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)]),
        8 => (24, &[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]),
        _ => unreachable!(),
    }
}

fn label_sl_elements(ring: RingSpec, elems: &[Mat2]) -> Result<CatalogLabel> {
    let one = ring.one();
    if elems.iter().any(|m| m.det() != one) {
        return Err(Error::NotInCatalog("element with det != 1 in SL part".into()));
    }
    let mut orders = BTreeMap::new();
    for m in elems {
        *orders.entry(element_order(m).unwrap_or(0)).or_insert(0usize) += 1;
    }
    for idx in 1..=8 {
        let (n, profile) = k_profile(idx);
        if elems.len() == n {
            let expected: BTreeMap<u32, usize> = profile.iter().copied().collect();
            if expected != orders {
                return Err(Error::NotInCatalog(format!(
                    "order {} with element orders {:?}",
                    n, orders
                )));
            }
            return Ok(CatalogLabel::k(idx));
        }
    }
    Err(Error::NotInCatalog(format!("SL group of order {}", elems.len())))
}

/// Label of a finite subgroup of SL(2,R).
pub fn classify_sl(k: &LinearGroup) -> Result<CatalogLabel> {
    label_sl_elements(k.ring, &k.elements)
}

/// The invariants used for recognition.
#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct GlSignature {
    pub sl_label: CatalogLabel,
    pub s: usize,
    pub order: usize,
    pub abelian: bool,
    pub cyclic: bool,
    /// Some element with generating determinant centralizes the SL part.
    pub inner: bool,
    pub eigen_pairs: BTreeSet<EigenPair>,
    pub element_orders: BTreeMap<u32, usize>,
}

pub fn gl_signature(h: &LinearGroup) -> Result<GlSignature> {
    let sl_label = label_sl_elements(h.ring, &h.sl_part)?;
    let mut eigen_pairs = BTreeSet::new();
    let mut inner = false;
    for m in h.det_generators() {
        let class = eigen_classify(m)?
            .ok_or_else(|| Error::NotInCatalog(format!("no eigenvalue class for {}", m)))?;
        eigen_pairs.insert(class.pair());
        if h.sl_part.iter().all(|k| k.mul(m) == m.mul(k)) {
            inner = true;
        }
    }
    Ok(GlSignature {
        sl_label,
        s: h.s,
        order: h.order(),
        abelian: h.is_abelian(),
        cyclic: h.is_cyclic(),
        inner,
        eigen_pairs,
        element_orders: h.element_orders(),
    })
}

/// Result of catalog recognition: the lowest matching label plus every match.
#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct Recognition {
    pub label: CatalogLabel,
    pub matches: Vec<CatalogLabel>,
    pub signature: GlSignature,
}

impl Recognition {
    pub fn is_ambiguous(&self) -> bool {
        self.matches.len() > 1
    }
}

pub fn classify_gl(h: &LinearGroup) -> Result<Recognition> {
    let signature = gl_signature(h)?;
    if signature.s == 1 {
        return Ok(Recognition {
            label: signature.sl_label,
            matches: vec![signature.sl_label],
            signature,
        });
    }
    let family = Family::over_sl(signature.sl_label.index)
        .ok_or_else(|| Error::NotInCatalog("unknown SL part".into()))?;
    let matches: Vec<CatalogLabel> = catalog::entries()
        .iter()
        .filter(|e| e.label.family == family && e.matches(&signature))
        .map(|e| e.label)
        .collect();
    match matches.first() {
        Some(&label) => Ok(Recognition { label, matches, signature }),
        None => Err(Error::NotInCatalog(format!(
            "{} with s = {}, |H| = {}, eigenvalue pairs {:?}",
            family.name(),
            signature.s,
            signature.order,
            signature.eigen_pairs.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        ))),
    }
}

/// Shorthand used by tests and the catalog: matrix with integer entries.
pub fn int_mat(ring: RingSpec, c: [[i64; 2]; 2]) -> Mat2 {
    Mat2::from_ints(ring, c)
}

/// Whether `m` has an eigenvalue equal to 1 when it has finite order.
pub fn fixes_a_line(m: &Mat2) -> bool {
    has_eigenvalue_one(m)
}

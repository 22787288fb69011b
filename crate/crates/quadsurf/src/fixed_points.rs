//! Smith normal form over Z and fixed loci of affine automorphisms of A.

use num_traits::Zero;
use serde::Serialize;

use crate::matrix_group::has_eigenvalue_one;
use crate::quad_order::{rat, Rational};
use crate::torus::{AffineAut, IntMat4, TorusPoint};

/// Representatives and samples are truncated to this many points.
pub const MAX_REPRESENTATIVES: usize = 64;

/// Full enumeration happens only below this count; above it the first
/// points in enumeration order are reported.
const ENUMERATION_LIMIT: u64 = 1 << 16;

pub type IntMatrix = Vec<Vec<i128>>;

/// U·M·V = D with U, V unimodular and d₁ | d₂ | … on the diagonal of D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn divisors(&self) -> Vec<i128> {
        let n = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..n).map(|i| self.d[i][i]).take_while(|x| *x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
        .collect()
}

fn swap_rows(m: &mut IntMatrix, i: usize, j: usize) {
    m.swap(i, j);
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for r in m.iter_mut() {
        r.swap(i, j);
    }
}

/// row_i += k·row_j
fn add_row(m: &mut IntMatrix, i: usize, j: usize, k: i128) {
    let rj = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(rj) {
        *x += k * y;
    }
}

/// col_i += k·col_j
fn add_col(m: &mut IntMatrix, i: usize, j: usize, k: i128) {
    for r in m.iter_mut() {
        r[i] += k * r[j];
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(u, v, d);
            };
            swap_rows(&mut d, t, bi);
            swap_rows(&mut u, t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let k = d[i][t].div_euclid(p);
                if k != 0 {
                    add_row(&mut d, i, t, -k);
                    add_row(&mut u, i, t, -k);
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..cols {
                let k = d[t][j].div_euclid(p);
                if k != 0 {
                    add_col(&mut d, j, t, -k);
                    add_col(&mut v, j, t, -k);
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % p != 0));
            match bad {
                Some(i) => {
                    add_row(&mut d, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
    }
    finish(u, v, d)
}

fn finish(mut u: IntMatrix, v: IntMatrix, mut d: IntMatrix) -> SmithDecomposition {
    for i in 0..d.len().min(d.first().map_or(0, |r| r.len())) {
        if d[i][i] < 0 {
            d[i][i] = -d[i][i];
            for x in u[i].iter_mut() {
                *x = -*x;
            }
        }
    }
    SmithDecomposition { u, v, d }
}

/// Fixed locus of an automorphism or group on A.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FixedPointSet {
    Empty,
    Finite {
        count: u64,
        representatives: Vec<TorusPoint>,
    },
    PositiveDimensional {
        dimension: u32,
        component_count: u64,
        sample_points: Vec<TorusPoint>,
    },
}

impl FixedPointSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, FixedPointSet::Empty)
    }

    /// Number of points, or of components for positive-dimensional sets.
    pub fn count(&self) -> u64 {
        match self {
            FixedPointSet::Empty => 0,
            FixedPointSet::Finite { count, .. } => *count,
            FixedPointSet::PositiveDimensional { component_count, .. } => *component_count,
        }
    }

    pub fn points(&self) -> &[TorusPoint] {
        match self {
            FixedPointSet::Empty => &[],
            FixedPointSet::Finite { representatives, .. } => representatives,
            FixedPointSet::PositiveDimensional { sample_points, .. } => sample_points,
        }
    }
}

/// Solves a·x ≡ t (mod Z^m) for x ∈ R⁴/Z⁴, where a has 4 columns.
pub fn solve_torus_congruence(a: &IntMatrix, t: &[Rational]) -> FixedPointSet {
    assert_eq!(a.len(), t.len(), "right-hand side length mismatch");
    assert!(a.iter().all(|r| r.len() == 4), "system must have four columns");
    let snf = smith_normal_form(a);
    let divs = snf.divisors();
    let rank = divs.len();
    let tp: Vec<Rational> = snf
        .u
        .iter()
        .map(|row| row.iter().zip(t).fold(Rational::zero(), |acc, (c, x)| acc + x * rat(*c as i64)))
        .collect();
    if tp[rank..].iter().any(|x| !x.is_integer()) {
        return FixedPointSet::Empty;
    }
    let free = 4 - rank;
    let count: u64 = divs.iter().map(|d| *d as u64).product();
    // y_i = (t'_i + k_i)/d_i for i < rank, free coordinates set to 0
    let mut points = Vec::new();
    let full = count <= ENUMERATION_LIMIT;
    let mut ks = vec![0i128; rank];
    'outer: loop {
        let y: Vec<Rational> = (0..4)
            .map(|i| {
                if i < rank {
                    (&tp[i] + rat(ks[i] as i64)) / rat(divs[i] as i64)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let x: [Rational; 4] = std::array::from_fn(|r| {
            (0..4).fold(Rational::zero(), |acc, c| acc + &y[c] * rat(snf.v[r][c] as i64))
        });
        points.push(TorusPoint::new(x));
        if !full && points.len() >= MAX_REPRESENTATIVES {
            break;
        }
        for i in (0..rank).rev() {
            ks[i] += 1;
            if ks[i] < divs[i] {
                continue 'outer;
            }
            ks[i] = 0;
        }
        break;
    }
    points.sort();
    points.dedup();
    points.truncate(MAX_REPRESENTATIVES);
    if free == 0 {
        FixedPointSet::Finite { count, representatives: points }
    } else {
        FixedPointSet::PositiveDimensional {
            dimension: (free / 2) as u32,
            component_count: count,
            sample_points: points,
        }
    }
}

/// Whether a·y = b has a solution y ∈ Z^n.
pub fn in_integer_image(a: &IntMatrix, b: &[Rational]) -> bool {
    assert_eq!(a.len(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let divs = snf.divisors();
    snf.u.iter().enumerate().all(|(i, row)| {
        let x = row.iter().zip(b).fold(Rational::zero(), |acc, (c, y)| acc + y * rat(*c as i64));
        match divs.get(i) {
            Some(d) => (x / rat(*d as i64)).is_integer(),
            None => x.is_zero(),
        }
    })
}

fn shifted_system(h: &AffineAut) -> (IntMatrix, Vec<Rational>) {
    let m: &IntMat4 = h.int4();
    let a = (0..4)
        .map(|i| (0..4).map(|j| (m[i][j] - i64::from(i == j)) as i128).collect())
        .collect();
    let t = h.translation_part().coords().iter().map(|x| -x).collect();
    (a, t)
}

/// Fix_A(h): solutions of (L − I)x ≡ −t.
pub fn fixed_set(h: &AffineAut) -> FixedPointSet {
    let (a, t) = shifted_system(h);
    solve_torus_congruence(&a, &t)
}

/// Points fixed by every listed element.
pub fn common_fixed_set(hs: &[AffineAut]) -> FixedPointSet {
    if hs.is_empty() {
        return solve_torus_congruence(&vec![vec![0; 4]], &[Rational::zero()]);
    }
    let mut a = Vec::new();
    let mut t = Vec::new();
    for h in hs {
        let (ah, th) = shifted_system(h);
        a.extend(ah);
        t.extend(th);
    }
    solve_torus_congruence(&a, &t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EigClass {
    Translation,
    E1,
    E0,
}

pub fn element_eig_class(h: &AffineAut) -> EigClass {
    let l = h.linear_part();
    if l.is_identity() {
        EigClass::Translation
    } else if has_eigenvalue_one(l) {
        EigClass::E1
    } else {
        EigClass::E0
    }
}

/// An E1 element with a fixed point; it fixes an elliptic curve pointwise.
pub fn is_reflection(h: &AffineAut) -> bool {
    element_eig_class(h) == EigClass::E1 && !fixed_set(h).is_empty()
}

/// |det| of a square integer matrix, from its Smith form.
pub fn int_det(m: &IntMatrix) -> i128 {
    let snf = smith_normal_form(m);
    if snf.rank() < m.len() {
        return 0;
    }
    snf.divisors().iter().product()
}

/// Largest elementary divisor, used as grid size for brute-force checks.
pub fn max_divisor(m: &IntMatrix) -> i128 {
    smith_normal_form(m).divisors().last().copied().unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_group::Mat2;
    use crate::quad_order::RingSpec;

    fn m(rows: &[&[i128]]) -> IntMatrix {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(mat_mul(&mat_mul(&s.u, a), &s.v), s.d);
        let divs = s.divisors();
        for w in divs.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn smith_examples() {
        let s = check(&m(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]));
        assert_eq!(s.divisors(), vec![2, 2, 2, 2]);
        let s = check(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.divisors(), vec![2, 4]);
        let s = check(&m(&[&[0, 0], &[0, 0]]));
        assert!(s.divisors().is_empty());
        let s = check(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.divisors(), vec![1, 6]);
        check(&m(&[&[4, 6, 0], &[6, 9, 3], &[0, 2, 8], &[1, 1, 1]]));
    }

    #[test]
    fn congruences() {
        let a = m(&[&[-2, 0, 0, 0], &[0, -2, 0, 0], &[0, 0, -2, 0], &[0, 0, 0, -2]]);
        let z = vec![Rational::zero(); 4];
        assert_eq!(solve_torus_congruence(&a, &z).count(), 16);
        let a = m(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, -2, 0], &[0, 0, 0, -2]]);
        let t = vec![Rational::new(1.into(), 2.into()), Rational::zero(), Rational::zero(), Rational::zero()];
        assert!(solve_torus_congruence(&a, &t).is_empty());
        let a = vec![vec![0; 4]; 4];
        assert!(matches!(
            solve_torus_congruence(&a, &z),
            FixedPointSet::PositiveDimensional { dimension: 2, component_count: 1, .. }
        ));
    }

    #[test]
    fn fixed_sets() {
        let z = RingSpec::integers();
        let minus = AffineAut::linear(Mat2::identity(z).neg()).unwrap();
        let f = fixed_set(&minus);
        assert_eq!(f.count(), 16);
        assert!(f.points().iter().all(|p| minus.apply(p) == *p));
        let half = TorusPoint::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)]);
        let refl = Mat2::from_ints(z, [[1, 0], [0, -1]]);
        let he = AffineAut::new(half, refl.clone()).unwrap();
        assert!(fixed_set(&he).is_empty());
        let r = AffineAut::linear(refl).unwrap();
        assert!(matches!(
            fixed_set(&r),
            FixedPointSet::PositiveDimensional { dimension: 1, component_count: 4, .. }
        ));
        let r2 = AffineAut::linear(Mat2::from_ints(z, [[-1, 0], [0, 1]])).unwrap();
        assert_eq!(common_fixed_set(&[r.clone(), r2]), fixed_set(&minus));
        assert!(common_fixed_set(&[minus.clone(), he.clone()]).is_empty());
        assert!(matches!(
            common_fixed_set(&[AffineAut::identity(z)]),
            FixedPointSet::PositiveDimensional { dimension: 2, component_count: 1, .. }
        ));
        assert_eq!(element_eig_class(&minus), EigClass::E0);
        assert_eq!(element_eig_class(&r), EigClass::E1);
        assert_eq!(element_eig_class(&AffineAut::translation(z, TorusPoint::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)]))), EigClass::Translation);
        assert!(is_reflection(&r));
        assert!(!is_reflection(&he));
        assert!(!is_reflection(&minus));
    }
}

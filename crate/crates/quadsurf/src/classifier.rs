//! Kodaira–Enriques type of A/H and the smoothness test.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_points::{
    common_fixed_set, element_eig_class, fixed_set, in_integer_image, EigClass, FixedPointSet, IntMatrix,
};
use crate::matrix_group::{classify_gl, element_order, has_eigenvalue_one, CatalogLabel};
use crate::quad_order::{rat, unit_to_root, Rational};
use crate::torus::{close_affine, AffineAut, AffineGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SurfaceType {
    Abelian,
    K3,
    Hyperelliptic,
    RuledElliptic,
    Enriques,
    Rational,
}

impl std::fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Fixed-point data of one generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorFixedPoints {
    pub generator: usize,
    pub eig_class: EigClass,
    pub in_kernel_det: bool,
    pub fixed_points: FixedPointSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub surface_type: SurfaceType,
    pub smooth: bool,
    pub group_order: usize,
    pub translation_order: usize,
    pub kernel_det_order: usize,
    pub linear_order: usize,
    pub s: usize,
    pub catalog_label: Option<CatalogLabel>,
    pub catalog_matches: Vec<CatalogLabel>,
    /// [H : K], present for Enriques quotients.
    pub enriques_index: Option<usize>,
    /// Second verdict from the generator-shape criterion, Enriques only.
    pub enriques_structure: Option<bool>,
    pub fixed_point_summary: Vec<GeneratorFixedPoints>,
}

fn det_generator(h: &AffineGroup) -> Option<&AffineAut> {
    let s = h.linear_image.s as u32;
    h.elements.iter().find(|g| {
        unit_to_root(&g.linear_part().det()).map(|r| r.order() == s).unwrap_or(false)
    })
}

/// The decision tree on the linear image, the det image and fixed points.
pub fn decide(h: &AffineGroup) -> SurfaceType {
    let lin = &h.linear_image;
    if lin.order() == 1 {
        return SurfaceType::Abelian;
    }
    if lin.s == 1 {
        return SurfaceType::K3;
    }
    if lin.sl_part.len() == 1 {
        let ho = det_generator(h).expect("some element has a generating determinant");
        debug_assert!(
            h.elements
                .iter()
                .filter(|g| unit_to_root(&g.linear_part().det()).map(|r| r.order() as usize == lin.s).unwrap_or(false))
                .all(|g| has_eigenvalue_one(g.linear_part()) == has_eigenvalue_one(ho.linear_part())),
            "det generators disagree on eigenvalue 1"
        );
        return match element_eig_class(ho) {
            EigClass::E1 if common_fixed_set(&h.generators).is_empty() => SurfaceType::Hyperelliptic,
            EigClass::E1 => SurfaceType::RuledElliptic,
            _ => SurfaceType::Rational,
        };
    }
    if h.outside_kernel().into_iter().all(|g| fixed_set(g).is_empty()) {
        debug_assert_eq!(h.order(), 2 * h.kernel_det.len(), "Enriques quotient with [H:K] != 2");
        SurfaceType::Enriques
    } else {
        SurfaceType::Rational
    }
}

pub fn is_smooth_quotient(h: &AffineGroup) -> bool {
    h.elements.iter().all(|g| has_eigenvalue_one(g.linear_part()))
}

/// How L(h_o)(U_o, V_o) ≠ −(U_o, V_o) is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum AssumptionMode {
    /// As an inequality of torus points.
    #[default]
    Torus,
    /// For every lifting (u_o, v_o) ∈ C², as an inequality of vectors.
    Lifting,
}

/// Whether the translation part of `go` passes the assumption on L(h_o).
pub fn assumption_holds(go: &AffineAut, mode: AssumptionMode) -> bool {
    let t = go.translation_part();
    match mode {
        AssumptionMode::Torus => t.transform(go.int4()) != t.neg(),
        AssumptionMode::Lifting => {
            // some lifting u has (L + I)u = 0 iff (L + I)u₀ ∈ (L + I)Z⁴
            let m: IntMatrix = (0..4)
                .map(|i| (0..4).map(|j| (go.int4()[i][j] + i64::from(i == j)) as i128).collect())
                .collect();
            let b: Vec<_> = (0..4)
                .map(|i| {
                    (0..4).fold(Rational::zero(), |acc, j| acc + &t.coords()[j] * rat(m[i][j] as i64))
                })
                .collect();
            !in_integer_image(&m, &b)
        }
    }
}

/// Looks for generators (g, g_o) of H with L(g) ∈ SL of order 2, 3, 4 or 6,
/// L(g_o) with eigenvalues {1, −1}, L(g_o)L(g)L(g_o)⁻¹ = L(g)⁻¹ and
/// L(g_o)(U_o, V_o) ≠ −(U_o, V_o) for the translation part of g_o.
pub fn enriques_structure_check(h: &AffineGroup) -> Result<bool> {
    enriques_structure_check_with(h, AssumptionMode::Torus)
}

pub fn enriques_structure_check_with(h: &AffineGroup, mode: AssumptionMode) -> Result<bool> {
    if decide(h) != SurfaceType::Enriques {
        return Err(Error::PreconditionViolated("the quotient is not of Enriques type".into()));
    }
    Ok(enriques_structure_holds(h, mode))
}

fn enriques_structure_holds(h: &AffineGroup, mode: AssumptionMode) -> bool {
    let one = h.ring.one();
    let zero = h.ring.zero();
    let rotations: Vec<&AffineAut> = h
        .elements
        .iter()
        .filter(|g| {
            let l = g.linear_part();
            l.det() == one && matches!(element_order(l), Some(2 | 3 | 4 | 6))
        })
        .collect();
    let flips: Vec<&AffineAut> = h
        .elements
        .iter()
        .filter(|g| {
            let l = g.linear_part();
            l.det() == -&one && l.trace() == zero
        })
        .collect();
    for g in &rotations {
        let lg = g.linear_part();
        let lg_inv = lg.inv().expect("finite order");
        for go in &flips {
            let lo = go.linear_part();
            if lo.mul(lg).mul(&lo.inv().expect("finite order")) != lg_inv || !assumption_holds(go, mode) {
                continue;
            }
            let gens = [(*g).clone(), (*go).clone()];
            if let Ok(sub) = close_affine(h.ring, &gens, h.order()) {
                if sub.order() == h.order() {
                    return true;
                }
            }
        }
    }
    false
}

pub fn surface_type(h: &AffineGroup) -> ClassificationReport {
    let surface_type = decide(h);
    let recognition = classify_gl(&h.linear_image).ok();
    let one = h.ring.one();
    let fixed_point_summary = h
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| GeneratorFixedPoints {
            generator: i,
            eig_class: element_eig_class(g),
            in_kernel_det: g.linear_part().det() == one,
            fixed_points: fixed_set(g),
        })
        .collect();
    let enriques = surface_type == SurfaceType::Enriques;
    ClassificationReport {
        surface_type,
        smooth: is_smooth_quotient(h),
        group_order: h.order(),
        translation_order: h.translation_subgroup.len(),
        kernel_det_order: h.kernel_det.len(),
        linear_order: h.linear_image.order(),
        s: h.linear_image.s,
        catalog_label: recognition.as_ref().map(|r| r.label),
        catalog_matches: recognition.map(|r| r.matches).unwrap_or_default(),
        enriques_index: enriques.then(|| h.order() / h.kernel_det.len()),
        enriques_structure: enriques.then(|| enriques_structure_holds(h, AssumptionMode::Torus)),
        fixed_point_summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_group::Mat2;
    use crate::quad_order::RingSpec;
    use crate::torus::{swap, TorusPoint};

    fn half() -> TorusPoint {
        TorusPoint::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)])
    }

    fn group(ring: RingSpec, gens: Vec<AffineAut>) -> AffineGroup {
        close_affine(ring, &gens, 10_000).unwrap()
    }

    #[test]
    fn worked_examples() {
        let z = RingSpec::integers();
        let minus = AffineAut::linear(Mat2::identity(z).neg()).unwrap();
        let refl = Mat2::from_ints(z, [[1, 0], [0, -1]]);

        let k3 = surface_type(&group(z, vec![minus.clone()]));
        assert_eq!(k3.surface_type, SurfaceType::K3);
        assert!(!k3.smooth);

        let he = surface_type(&group(z, vec![AffineAut::new(half(), refl.clone()).unwrap()]));
        assert_eq!(he.surface_type, SurfaceType::Hyperelliptic);
        assert!(he.smooth);

        let re = surface_type(&group(z, vec![AffineAut::linear(refl).unwrap()]));
        assert_eq!(re.surface_type, SurfaceType::RuledElliptic);

        let g = RingSpec::gaussian();
        let ii = AffineAut::linear(Mat2::scalar(&g.theta().unwrap())).unwrap();
        assert_eq!(surface_type(&group(g, vec![ii])).surface_type, SurfaceType::Rational);

        let ho = AffineAut::new(half(), swap(z)).unwrap();
        let en = surface_type(&group(z, vec![minus, ho]));
        assert_eq!(en.surface_type, SurfaceType::Enriques);
        assert_eq!(en.enriques_index, Some(2));
        assert_eq!((en.group_order, en.kernel_det_order, en.translation_order), (8, 4, 2));
        assert_eq!(en.enriques_structure, Some(true));
        let h = group(z, vec![AffineAut::linear(Mat2::identity(z).neg()).unwrap(), AffineAut::new(half(), swap(z)).unwrap()]);
        assert!(enriques_structure_check_with(&h, AssumptionMode::Lifting).unwrap());
    }

    #[test]
    fn assumption_modes() {
        let z = RingSpec::integers();
        let refl = Mat2::from_ints(z, [[1, 0], [0, -1]]);
        // (L + I)t = (1, 0, 0, 0) is integral but outside (L + I)Z⁴
        let go = AffineAut::new(half(), refl).unwrap();
        assert!(!assumption_holds(&go, AssumptionMode::Torus));
        assert!(assumption_holds(&go, AssumptionMode::Lifting));
        let t = TorusPoint::from_ratios([(1, 2), (0, 1), (1, 2), (0, 1)]);
        let go = AffineAut::new(t, swap(z)).unwrap();
        assert!(!assumption_holds(&go, AssumptionMode::Torus));
        assert!(!assumption_holds(&go, AssumptionMode::Lifting));
        let t = TorusPoint::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)]);
        let go = AffineAut::new(t, swap(z)).unwrap();
        assert!(assumption_holds(&go, AssumptionMode::Torus));
        assert!(assumption_holds(&go, AssumptionMode::Lifting));
    }

    #[test]
    fn abelian_and_preconditions() {
        let z = RingSpec::integers();
        let t = AffineAut::translation(z, half());
        let h = group(z, vec![t]);
        assert_eq!(decide(&h), SurfaceType::Abelian);
        assert!(is_smooth_quotient(&h));
        assert!(matches!(enriques_structure_check(&h), Err(Error::PreconditionViolated(_))));
    }
}

//! Root-space bookkeeping for τ: weight functionals on the Cartan H, the
//! enlarged fixed-point root system Δ_{0,en}, and the triangular
//! decompositions the module theory runs over.

use crate::liealg::{alpha_lex_sign, SimpleLieAlgebraData};
use crate::linalg::Mat;
use crate::scalar::{CycScalar, Rat};
use crate::tau::{BasisSymbol, TauContext};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootError {
    #[error("root system is not irreducible")]
    NotIrreducible,
    #[error("root system is not reduced")]
    NotReduced,
    #[error("symbol is outside the domain of this decomposition: {0}")]
    OutOfDomain(String),
}

/// A weight of the Cartan H = h(0̄) ⊕ ΣCK_i ⊕ ΣCd_i, in coordinates
/// (h(0̄)*-part, δ₀-coefficient, δ_k-coefficients, w_i-coefficients).
/// The w-part pairs against the K_i and is zero on every basis symbol;
/// it is carried for module weights where the central character shows up.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeightVector {
    pub alpha: Vec<CycScalar>,
    pub k0: i64,
    pub k: Vec<i64>,
    #[serde(with = "rat_strings")]
    pub w: Vec<Rat>,
}

mod rat_strings {
    use super::Rat;
    use crate::scalar::{format_rat, parse_rat};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(format_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<String>::deserialize(de)?
            .iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Root or weight of a basis symbol of τ, per the H-root-space decomposition.
pub fn weight_of(ctx: &TauContext, sym: &BasisSymbol) -> WeightVector {
    let h0_rank = ctx.decomp.h0_basis.len();
    let (alpha, k0, k) = match sym {
        BasisSymbol::Loop { v, k0, k } => {
            (ctx.decomp.vectors[*v].alpha.clone(), *k0, k.clone())
        }
        BasisSymbol::Central { s0, s, .. } | BasisSymbol::Deriv { s0, s, .. } => (
            vec![CycScalar::zero(ctx.order()); h0_rank],
            *s0,
            s.clone(),
        ),
    };
    WeightVector {
        alpha,
        k0,
        k,
        w: vec![Rat::from_integer(0.into()); ctx.n() + 1],
    }
}

/// The triangular decompositions used by the induction machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionKind {
    /// by the affine root system: sign of k₀, then sign of α
    Affine,
    /// by the d₀-eigenvalue alone
    D0,
    /// inside τ₀ (k₀ = 0): sign of α
    Tau0,
    /// inside g(σ₀): sign of α on finite vectors
    GSigma0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    fn of(x: i64) -> Sign {
        match x.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Minus,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Plus,
        }
    }

    fn of_alpha(alpha: &[CycScalar]) -> Sign {
        match alpha_lex_sign(alpha) {
            s if s < 0 => Sign::Minus,
            0 => Sign::Zero,
            _ => Sign::Plus,
        }
    }
}

/// Classifies a symbol into the MINUS/ZERO/PLUS part of a decomposition.
pub fn classify(
    ctx: &TauContext,
    sym: &BasisSymbol,
    kind: DecompositionKind,
) -> Result<Sign, RootError> {
    let w = weight_of(ctx, sym);
    match kind {
        DecompositionKind::D0 => Ok(Sign::of(w.k0)),
        DecompositionKind::Affine => {
            if w.k0 != 0 {
                Ok(Sign::of(w.k0))
            } else {
                Ok(Sign::of_alpha(&w.alpha))
            }
        }
        DecompositionKind::Tau0 => {
            if w.k0 != 0 {
                return Err(RootError::OutOfDomain(format!(
                    "TAU0 needs k₀ = 0, symbol has k₀ = {}",
                    w.k0
                )));
            }
            Ok(Sign::of_alpha(&w.alpha))
        }
        DecompositionKind::GSigma0 => match sym {
            BasisSymbol::Loop { v, k0: 0, .. } if ctx.decomp.vectors[*v].k0 == 0 => {
                Ok(Sign::of_alpha(&w.alpha))
            }
            _ => Err(RootError::OutOfDomain(
                "GSIGMA0 classifies σ₀-fixed loop vectors at k₀ = 0".into(),
            )),
        },
    }
}

/// A finite root system presented by its nonzero roots as h(0̄)-weight
/// functionals, together with the dual of the invariant form.
pub struct RootSystem {
    order: u32,
    roots: Vec<Vec<CycScalar>>,
    gram_inv: Mat,
}

impl RootSystem {
    pub fn new(
        order: u32,
        roots: Vec<Vec<CycScalar>>,
        h0_basis: &[Vec<CycScalar>],
        alg: &SimpleLieAlgebraData,
    ) -> Self {
        let r = h0_basis.len();
        let mut gram = Mat::zero(order, r, r);
        for i in 0..r {
            for j in 0..r {
                *gram.at_mut(i, j) = alg.pair(&h0_basis[i], &h0_basis[j]);
            }
        }
        let gram_inv = gram
            .inverse()
            .expect("invariant form restricted to h(0̄) is nondegenerate");
        Self {
            order,
            roots,
            gram_inv,
        }
    }

    pub fn roots(&self) -> &[Vec<CycScalar>] {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        if self.roots.is_empty() {
            return 0;
        }
        Mat::from_rows(self.order, self.roots.clone()).rank()
    }

    /// (λ, μ) through the inverse Gram matrix of h(0̄).
    pub fn pairing(&self, a: &[CycScalar], b: &[CycScalar]) -> CycScalar {
        let gb = self.gram_inv.apply(b);
        let mut acc = CycScalar::zero(self.order);
        for (x, y) in a.iter().zip(&gb) {
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * y);
            }
        }
        acc
    }

    fn norm_rat(&self, a: &[CycScalar]) -> Rat {
        self.pairing(a, a)
            .as_rat()
            .expect("root lengths must be rational to compare")
    }

    pub fn is_irreducible(&self) -> bool {
        if self.roots.is_empty() {
            return false;
        }
        let n = self.roots.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && !self.pairing(&self.roots[i], &self.roots[j]).is_zero() {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_reduced(&self) -> bool {
        self.roots.iter().all(|r| {
            let doubled: Vec<CycScalar> = r.iter().map(|c| c + c).collect();
            !self.roots.contains(&doubled)
        })
    }

    /// Roots of minimal length.
    pub fn short_roots(&self) -> Vec<Vec<CycScalar>> {
        if self.roots.is_empty() {
            return vec![];
        }
        let norms: Vec<Rat> = self.roots.iter().map(|r| self.norm_rat(r)).collect();
        let min = norms.iter().min().unwrap().clone();
        self.roots
            .iter()
            .zip(&norms)
            .filter(|(_, n)| **n == min)
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// Type-B_l detection for rank ≥ 2: exactly two root lengths with ratio 2,
    /// 2·rank short roots, and short roots pairwise orthogonal (up to sign).
    pub fn is_type_b(&self) -> bool {
        let mut norms: Vec<Rat> = self.roots.iter().map(|r| self.norm_rat(r)).collect();
        norms.sort();
        norms.dedup();
        if norms.len() != 2 {
            return false;
        }
        let two = Rat::from_integer(2.into());
        if &norms[1] / &norms[0] != two {
            return false;
        }
        let short = self.short_roots();
        if short.len() != 2 * self.rank() {
            return false;
        }
        for (i, s) in short.iter().enumerate() {
            for t in short.iter().skip(i + 1) {
                let neg: Vec<CycScalar> = t.iter().map(|c| -c).collect();
                if s == t || *s == neg {
                    continue;
                }
                if !self.pairing(s, t).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Roots that are positive in the lexicographic base.
    pub fn positive_roots(&self) -> Vec<Vec<CycScalar>> {
        self.roots
            .iter()
            .filter(|r| alpha_lex_sign(r) > 0)
            .cloned()
            .collect()
    }

    /// Simple roots of the lexicographic base: positive roots that are not
    /// sums of two positive roots.
    pub fn simple_roots(&self) -> Vec<Vec<CycScalar>> {
        let pos = self.positive_roots();
        pos.iter()
            .filter(|a| {
                !pos.iter().any(|b| {
                    pos.iter().any(|c| {
                        b.iter()
                            .zip(c.iter())
                            .zip(a.iter())
                            .all(|((x, y), z)| &(x + y) == z)
                    })
                })
            })
            .cloned()
            .collect()
    }

    /// Fundamental weights dual to the simple coroots of the lexicographic
    /// base (requires the roots to span h(0̄)*).
    pub fn fundamental_weights(&self) -> Vec<Vec<CycScalar>> {
        let simple = self.simple_roots();
        let dim = simple.first().map_or(0, |r| r.len());
        let two = CycScalar::from_int(self.order, 2);
        // row_j(ω) = 2(ω, α_j)/(α_j, α_j), linear in the coordinates of ω
        let rows: Vec<Vec<CycScalar>> = simple
            .iter()
            .map(|a| {
                let ga = self.gram_inv.apply(a);
                let nn = self.pairing(a, a);
                let scale = two.checked_div(&nn).expect("root norm nonzero");
                ga.iter().map(|c| c * &scale).collect()
            })
            .collect();
        let m = Mat::from_rows(self.order, rows);
        (0..simple.len())
            .map(|i| {
                let mut e = vec![CycScalar::zero(self.order); simple.len()];
                e[i] = CycScalar::one(self.order);
                m.solve(&e).expect("simple coroots are independent")
            })
            .map(|mut v| {
                v.resize(dim, CycScalar::zero(self.order));
                v
            })
            .collect()
    }

    /// Weyl dimension formula Π_{α>0} (λ+ρ, α)/(ρ, α); None when a pairing
    /// is irrational. Independent of the induction machinery, so it serves
    /// as the oracle for finite-dimensional irreducibles.
    pub fn weyl_dim(&self, lambda: &[CycScalar]) -> Option<Rat> {
        let pos = self.positive_roots();
        let two_inv = CycScalar::from_rat(self.order, Rat::new(1.into(), 2.into()));
        let mut rho = vec![CycScalar::zero(self.order); lambda.len()];
        for a in &pos {
            for (r, c) in rho.iter_mut().zip(a) {
                *r += c;
            }
        }
        for r in rho.iter_mut() {
            *r = &*r * &two_inv;
        }
        let mut dim = Rat::from_integer(1.into());
        for a in &pos {
            let lr: Vec<CycScalar> = lambda.iter().zip(&rho).map(|(x, y)| x + y).collect();
            let num = self.pairing(&lr, a).as_rat()?;
            let den = self.pairing(&rho, a).as_rat()?;
            dim *= num / den;
        }
        Some(dim)
    }

    /// Δ_{0,en}: the roots, plus the doubled short roots when the B_l clause
    /// applies, plus zero.
    pub fn enlarged(&self, doubled: bool) -> Vec<Vec<CycScalar>> {
        let mut out = self.roots.clone();
        if doubled {
            for s in self.short_roots() {
                let d: Vec<CycScalar> = s.iter().map(|c| c + c).collect();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        let dim = self.roots.first().map_or(0, |r| r.len());
        let zero = vec![CycScalar::zero(self.order); dim];
        if !out.contains(&zero) {
            out.push(zero);
        }
        out
    }
}

/// Δ_{0,en} from a root system, honoring the §2.13(3) branch. When `doubled`
/// asks for the B_l branch, rank ≥ 2 systems must actually be of type B;
/// rank-1 systems are doubled on request (the B₁ = A₁ convention flag).
pub fn enlarge_roots(rs: &RootSystem, doubled: bool) -> Result<Vec<Vec<CycScalar>>, RootError> {
    if !rs.is_irreducible() {
        return Err(RootError::NotIrreducible);
    }
    if !rs.is_reduced() {
        return Err(RootError::NotReduced);
    }
    if doubled && rs.rank() >= 2 && !rs.is_type_b() {
        return Err(RootError::OutOfDomain(
            "short-root doubling only applies to type B_l".into(),
        ));
    }
    Ok(rs.enlarged(doubled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{
        build_chevalley, build_sl3_twisted, eigen_decompose, CartanType, FiniteAutomorphism,
    };

    fn sl2_ctx() -> TauContext {
        let alg = build_chevalley(CartanType::A1, 1);
        let autos = vec![
            FiniteAutomorphism::identity(1, 3),
            FiniteAutomorphism::identity(1, 3),
        ];
        let decomp = eigen_decompose(&alg, &autos).unwrap();
        TauContext::new(alg, decomp)
    }

    #[test]
    fn weight_of_symbols() {
        let ctx = sl2_ctx();
        let d0 = ctx.deriv_symbol(0, 0, vec![0]).unwrap();
        let w = weight_of(&ctx, &d0);
        assert_eq!((w.k0, w.k.as_slice()), (0, &[0][..]));
        assert!(w.alpha.iter().all(|c| c.is_zero()));
        assert!(w.w.iter().all(|r| r == &Rat::from_integer(0.into())));
        let k = ctx.central_symbol(0, 3, vec![0]).unwrap();
        let w = weight_of(&ctx, &k);
        assert_eq!(w.k0, 3);
        // loop symbols carry their g-vector's h(0̄)-weight
        let e_idx = ctx.decomp.indices_where(|v| v.coords[0].is_one())[0];
        let w = weight_of(&ctx, &ctx.loop_symbol(e_idx, 1, vec![1]).unwrap());
        assert_eq!(w.alpha, vec![CycScalar::from_int(1, 2)]);
        assert_eq!((w.k0, w.k.as_slice()), (1, &[1][..]));
    }

    #[test]
    fn classification_matches_the_paper_conventions() {
        let ctx = sl2_ctx();
        let e_idx = ctx.decomp.indices_where(|v| v.coords[0].is_one())[0];
        let f_idx = ctx.decomp.indices_where(|v| v.coords[1].is_one())[0];
        let d1 = ctx.deriv_symbol(1, 0, vec![0]).unwrap();
        for kind in [
            DecompositionKind::Affine,
            DecompositionKind::D0,
            DecompositionKind::Tau0,
        ] {
            assert_eq!(classify(&ctx, &d1, kind).unwrap(), Sign::Zero);
        }
        // Loop(e, 0, k): D0-zero but TAU0-plus
        let e0 = ctx.loop_symbol(e_idx, 0, vec![2]).unwrap();
        assert_eq!(classify(&ctx, &e0, DecompositionKind::D0).unwrap(), Sign::Zero);
        assert_eq!(classify(&ctx, &e0, DecompositionKind::Tau0).unwrap(), Sign::Plus);
        assert_eq!(classify(&ctx, &e0, DecompositionKind::Affine).unwrap(), Sign::Plus);
        // Loop(f, 2, k): k₀ = 2 dominates under D0 and AFFINE
        let f2 = ctx.loop_symbol(f_idx, 2, vec![0]).unwrap();
        assert_eq!(classify(&ctx, &f2, DecompositionKind::D0).unwrap(), Sign::Plus);
        assert_eq!(classify(&ctx, &f2, DecompositionKind::Affine).unwrap(), Sign::Plus);
        assert!(classify(&ctx, &f2, DecompositionKind::Tau0).is_err());
        // GSIGMA0 classifies fixed loop vectors at k₀ = 0
        assert_eq!(
            classify(&ctx, &e0, DecompositionKind::GSigma0).unwrap(),
            Sign::Plus
        );
        assert!(classify(&ctx, &f2, DecompositionKind::GSigma0).is_err());
    }

    #[test]
    fn affine_zero_is_d0_zero_intersect_tau0_zero() {
        // the τ⁰-vs-τ₀(0) coincidence, checked over a bounded symbol window
        let ctx = sl2_ctx();
        let mut symbols = Vec::new();
        for v in 0..ctx.decomp.vectors.len() {
            for k0 in -2..=2 {
                for k in -2..=2 {
                    symbols.push(ctx.loop_symbol(v, k0, vec![k]).unwrap());
                }
            }
        }
        for i in 0..=1 {
            for k0 in [-2, 0, 2] {
                for k in -2..=2 {
                    symbols.push(ctx.deriv_symbol(i, k0, vec![k]).unwrap());
                    if let Ok(c) = ctx.central_symbol(i, k0, vec![k]) {
                        symbols.push(c);
                    }
                }
            }
        }
        for s in &symbols {
            let affine_zero =
                classify(&ctx, s, DecompositionKind::Affine).unwrap() == Sign::Zero;
            let d0_zero = classify(&ctx, s, DecompositionKind::D0).unwrap() == Sign::Zero;
            let tau0_zero = d0_zero
                && classify(&ctx, s, DecompositionKind::Tau0).unwrap() == Sign::Zero;
            assert_eq!(affine_zero, tau0_zero, "symbol {s:?}");
        }
    }

    #[test]
    fn classify_is_additive_on_plus_parts() {
        use crate::tau::{bracket_symbols, CocycleConfig};
        let ctx = sl2_ctx();
        let e_idx = ctx.decomp.indices_where(|v| v.coords[0].is_one())[0];
        let cfg = CocycleConfig::zero(1);
        let plus = [
            ctx.loop_symbol(e_idx, 0, vec![0]).unwrap(),
            ctx.loop_symbol(e_idx, 0, vec![1]).unwrap(),
        ];
        for a in &plus {
            for b in &plus {
                let br = bracket_symbols(&ctx, a, b, &cfg);
                for (s, _) in br.iter() {
                    assert_eq!(
                        classify(&ctx, s, DecompositionKind::Tau0).unwrap(),
                        Sign::Plus
                    );
                }
            }
        }
    }

    #[test]
    fn weight_additivity_under_brackets() {
        use crate::tau::{bracket_symbols, CocycleConfig};
        let (alg, sigma0) = build_sl3_twisted(4);
        let autos = vec![sigma0, FiniteAutomorphism::identity(4, 8)];
        let decomp = eigen_decompose(&alg, &autos).unwrap();
        let ctx = TauContext::new(alg, decomp);
        let cfg = CocycleConfig::from_ints(4, 1, 1);
        let syms = vec![
            ctx.loop_symbol(0, 0, vec![0]).unwrap(),
            ctx.loop_symbol(3, 1, vec![1]).unwrap(),
            ctx.deriv_symbol(0, 2, vec![-1]).unwrap(),
            ctx.deriv_symbol(1, -2, vec![0]).unwrap(),
            ctx.central_symbol(1, 2, vec![0]).unwrap(),
        ];
        for a in &syms {
            for b in &syms {
                let wa = weight_of(&ctx, a);
                let wb = weight_of(&ctx, b);
                let br = bracket_symbols(&ctx, a, b, &cfg);
                for (s, _) in br.iter() {
                    let ws = weight_of(&ctx, s);
                    assert_eq!(ws.k0, wa.k0 + wb.k0);
                    for i in 0..ws.k.len() {
                        assert_eq!(ws.k[i], wa.k[i] + wb.k[i]);
                    }
                    for i in 0..ws.alpha.len() {
                        assert_eq!(ws.alpha[i], &wa.alpha[i] + &wb.alpha[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn enlarge_roots_per_type() {
        // A1 under the doubling convention: {±α, ±2α, 0}
        let alg = build_chevalley(CartanType::A1, 1);
        let rs = alg.root_system();
        let en = enlarge_roots(&rs, true).unwrap();
        assert_eq!(en.len(), 5);
        let en = enlarge_roots(&rs, false).unwrap();
        assert_eq!(en.len(), 3);
        // A2: unchanged plus {0}; doubling must be refused
        let alg = build_chevalley(CartanType::A2, 1);
        let rs = alg.root_system();
        let en = enlarge_roots(&rs, false).unwrap();
        assert_eq!(en.len(), 7);
        assert!(!rs.is_type_b());
        assert!(enlarge_roots(&rs, true).is_err());
        // B2: 8 roots + 4 doubled short roots + 0
        let alg = build_chevalley(CartanType::B2, 1);
        let rs = alg.root_system();
        assert!(rs.is_type_b());
        assert_eq!(rs.short_roots().len(), 4);
        let en = enlarge_roots(&rs, true).unwrap();
        assert_eq!(en.len(), 13);
    }
}

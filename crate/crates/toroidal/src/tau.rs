//! The twisted full toroidal Lie algebra τ = L(g,σ) ⊕ Z(m₀,m) ⊕ D(m₀,m) as a
//! computable Lie algebra: canonical basis symbols, the dA quotient in normal
//! form, and the complete bracket including the two-cocycle deformation.
//!
//! Central symbols are kept in dA-normal form at all times, pivoting on the
//! smallest index with nonzero exponent; antisymmetry of the cocycle terms
//! only holds modulo dA, so the quotient is what makes the bracket a Lie
//! bracket at all.

use crate::liealg::{EigenDecomposition, SimpleLieAlgebraData};
use crate::scalar::CycScalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TauError {
    #[error("loop vector {v} does not live in the eigenspace of degree ({k0}, {k:?})")]
    WrongPiece { v: usize, k0: i64, k: Vec<i64> },
    #[error("degree ({0}, {1:?}) is not in Γ₀ × Γ")]
    DegreeNotInLattice(i64, Vec<i64>),
    #[error("index {0} out of range 0..={1}")]
    BadIndex(usize, usize),
}

/// Shared configuration: the algebra, its eigenbasis, and the lattice data.
pub struct TauContext {
    pub alg: SimpleLieAlgebraData,
    pub decomp: EigenDecomposition,
    /// automorphism orders m₀, m₁, …, m_n
    pub m: Vec<u32>,
}

impl TauContext {
    pub fn new(alg: SimpleLieAlgebraData, decomp: EigenDecomposition) -> Self {
        let m = decomp.m.clone();
        Self { alg, decomp, m }
    }

    pub fn order(&self) -> u32 {
        self.alg.order()
    }

    /// number of t₁..t_n variables
    pub fn n(&self) -> usize {
        self.m.len() - 1
    }

    pub fn in_lattice(&self, s0: i64, s: &[i64]) -> bool {
        s0.rem_euclid(self.m[0] as i64) == 0
            && s.iter()
                .zip(&self.m[1..])
                .all(|(&si, &mi)| si.rem_euclid(mi as i64) == 0)
    }

    pub fn loop_symbol(&self, v: usize, k0: i64, k: Vec<i64>) -> Result<BasisSymbol, TauError> {
        if v >= self.decomp.vectors.len() {
            return Err(TauError::BadIndex(v, self.decomp.vectors.len() - 1));
        }
        let ev = &self.decomp.vectors[v];
        let class_ok = ev.k0 as i64 == k0.rem_euclid(self.m[0] as i64)
            && ev
                .kbar
                .iter()
                .zip(k.iter().zip(&self.m[1..]))
                .all(|(&c, (&ki, &mi))| c as i64 == ki.rem_euclid(mi as i64));
        if !class_ok {
            return Err(TauError::WrongPiece { v, k0, k });
        }
        Ok(BasisSymbol::Loop { v, k0, k })
    }

    pub fn central_symbol(&self, i: usize, s0: i64, s: Vec<i64>) -> Result<BasisSymbol, TauError> {
        if i > self.n() {
            return Err(TauError::BadIndex(i, self.n()));
        }
        if !self.in_lattice(s0, &s) {
            return Err(TauError::DegreeNotInLattice(s0, s));
        }
        Ok(BasisSymbol::Central { i, s0, s })
    }

    pub fn deriv_symbol(&self, i: usize, s0: i64, s: Vec<i64>) -> Result<BasisSymbol, TauError> {
        if i > self.n() {
            return Err(TauError::BadIndex(i, self.n()));
        }
        if !self.in_lattice(s0, &s) {
            return Err(TauError::DegreeNotInLattice(s0, s));
        }
        Ok(BasisSymbol::Deriv { i, s0, s })
    }
}

/// A canonical basis symbol of τ.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BasisSymbol {
    /// eigenbasis vector v of g(k̄₀, k̄) attached to t₀^{k₀}t^{k̄}
    Loop { v: usize, k0: i64, k: Vec<i64> },
    /// t₀^{s₀} t^{s} K_i, stored in dA-normal form only
    Central { i: usize, s0: i64, s: Vec<i64> },
    /// t₀^{s₀} t^{s} d_i
    Deriv { i: usize, s0: i64, s: Vec<i64> },
}

impl BasisSymbol {
    /// (t₀-degree, t-degree) of the symbol.
    pub fn degree(&self) -> (i64, &[i64]) {
        match self {
            BasisSymbol::Loop { k0, k, .. } => (*k0, k),
            BasisSymbol::Central { s0, s, .. } | BasisSymbol::Deriv { s0, s, .. } => (*s0, s),
        }
    }

    /// Full exponent vector (degree₀, degree₁, …, degree_n).
    pub fn exponents(&self) -> Vec<i64> {
        let (d0, d) = self.degree();
        let mut out = Vec::with_capacity(d.len() + 1);
        out.push(d0);
        out.extend_from_slice(d);
        out
    }
}

/// A finitely supported linear combination of normal-form basis symbols.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TauElement {
    terms: BTreeMap<BasisSymbol, CycScalar>,
}

impl TauElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_symbol(sym: BasisSymbol, c: CycScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(sym, c);
        e
    }

    pub fn add_term(&mut self, sym: BasisSymbol, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(sym) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_in(&mut self, other: &TauElement) {
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &CycScalar) -> TauElement {
        let mut out = TauElement::zero();
        for (s, x) in &self.terms {
            out.add_term(s.clone(), x * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisSymbol, &CycScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(s, c)| {
                    serde_json::json!({
                        "symbol": s,
                        "scalar": c,
                    })
                })
                .collect(),
        )
    }
}

/// φ = c1·φ1 + c2·φ2 deforming the derivation bracket.
#[derive(Clone, Debug)]
pub struct CocycleConfig {
    pub c1: CycScalar,
    pub c2: CycScalar,
}

impl CocycleConfig {
    pub fn new(c1: CycScalar, c2: CycScalar) -> Self {
        Self { c1, c2 }
    }

    pub fn zero(order: u32) -> Self {
        Self {
            c1: CycScalar::zero(order),
            c2: CycScalar::zero(order),
        }
    }

    pub fn from_ints(order: u32, c1: i64, c2: i64) -> Self {
        Self {
            c1: CycScalar::from_int(order, c1),
            c2: CycScalar::from_int(order, c2),
        }
    }
}

/// Rewrites c · t₀^{s₀}t^{s}K_i into dA-normal form.
///
/// At degree zero all n+1 central generators survive. Otherwise the degree's
/// relation Σ_p exp_p K_p = 0 eliminates K_j for the pivot j = min{p : exp_p ≠ 0};
/// symbols with i ≠ j are already normal. Idempotent by construction.
pub fn normalize_central(
    ctx: &TauContext,
    i: usize,
    s0: i64,
    s: &[i64],
    c: CycScalar,
) -> Result<TauElement, TauError> {
    if i > ctx.n() {
        return Err(TauError::BadIndex(i, ctx.n()));
    }
    if !ctx.in_lattice(s0, s) {
        return Err(TauError::DegreeNotInLattice(s0, s.to_vec()));
    }
    let mut exps = Vec::with_capacity(s.len() + 1);
    exps.push(s0);
    exps.extend_from_slice(s);
    let Some(j) = exps.iter().position(|&e| e != 0) else {
        // degree (0, 0): all K_i survive
        return Ok(TauElement::from_symbol(
            BasisSymbol::Central { i, s0, s: s.to_vec() },
            c,
        ));
    };
    if i != j {
        return Ok(TauElement::from_symbol(
            BasisSymbol::Central { i, s0, s: s.to_vec() },
            c,
        ));
    }
    // K_j = −(1/exp_j) Σ_{p≠j} exp_p K_p at the same monomial
    let mut out = TauElement::zero();
    let pivot = CycScalar::from_int(ctx.order(), exps[j]);
    for (p, &e) in exps.iter().enumerate() {
        if p == j || e == 0 {
            continue;
        }
        let coeff = -&(&c * &CycScalar::from_int(ctx.order(), e)).checked_div(&pivot).expect("pivot nonzero");
        out.add_term(
            BasisSymbol::Central { i: p, s0, s: s.to_vec() },
            coeff,
        );
    }
    Ok(out)
}

fn add_central_row(
    ctx: &TauContext,
    out: &mut TauElement,
    coeffs: &[(usize, i64)],
    s0: i64,
    s: &[i64],
    scale: &CycScalar,
) {
    // Σ (i, c_i·scale) · K_i at degree (s0, s), normalized
    for &(i, c) in coeffs {
        if c == 0 || scale.is_zero() {
            continue;
        }
        let sc = scale * &CycScalar::from_int(ctx.order(), c);
        let norm = normalize_central(ctx, i, s0, s, sc)
            .expect("central degree arises from a valid bracket");
        out.add_in(&norm);
    }
}

/// The bracket of two basis symbols, per the complete multiplication table.
/// Mixed-kind orders the table lists only one way are defined by antisymmetry.
pub fn bracket_symbols(
    ctx: &TauContext,
    a: &BasisSymbol,
    b: &BasisSymbol,
    cfg: &CocycleConfig,
) -> TauElement {
    use BasisSymbol::*;
    let ord = ctx.order();
    match (a, b) {
        (Loop { v: x, k0, k }, Loop { v: y, k0: l0, k: l }) => {
            let xv = &ctx.decomp.vectors[*x];
            let yv = &ctx.decomp.vectors[*y];
            let mut out = TauElement::zero();
            // [X,Y] ⊗ t^{k+l}
            let br = ctx.alg.bracket(&xv.coords, &yv.coords);
            let nk0 = k0 + l0;
            let nk: Vec<i64> = k.iter().zip(l.iter()).map(|(a, b)| a + b).collect();
            for (t, c) in ctx.decomp.expand(&br) {
                out.add_term(
                    Loop { v: t, k0: nk0, k: nk.clone() },
                    c,
                );
            }
            // (X,Y) Σ_p k_p K_p at degree (k0+l0, k+l)
            let pairing = ctx.alg.pair(&xv.coords, &yv.coords);
            if !pairing.is_zero() {
                let coeffs: Vec<(usize, i64)> = std::iter::once(*k0)
                    .chain(k.iter().copied())
                    .enumerate()
                    .collect();
                add_central_row(ctx, &mut out, &coeffs, nk0, &nk, &pairing);
            }
            out
        }
        (Loop { .. }, Central { .. })
        | (Central { .. }, Loop { .. })
        | (Central { .. }, Central { .. }) => TauElement::zero(),
        (Deriv { i: a_idx, s0: r0, s: r }, Loop { v, k0, k }) => {
            // [t^r d_a, X(k)] = k_a X(k + r)
            let mut exps = Vec::with_capacity(k.len() + 1);
            exps.push(*k0);
            exps.extend_from_slice(k);
            let ka = exps[*a_idx];
            if ka == 0 {
                return TauElement::zero();
            }
            let nk: Vec<i64> = k.iter().zip(r.iter()).map(|(a, b)| a + b).collect();
            TauElement::from_symbol(
                Loop { v: *v, k0: k0 + r0, k: nk },
                CycScalar::from_int(ord, ka),
            )
        }
        (Loop { .. }, Deriv { .. }) => bracket_symbols(ctx, b, a, cfg).scale(&CycScalar::from_int(ord, -1)),
        (Deriv { i: a_idx, s0: r0, s: r }, Central { i: b_idx, s0: c_s0, s: c_s }) => {
            // s_a K_b + δ_{ab} Σ_p r_p K_p, all at degree (r+s)
            let mut s_exps = Vec::with_capacity(c_s.len() + 1);
            s_exps.push(*c_s0);
            s_exps.extend_from_slice(c_s);
            let n0 = r0 + c_s0;
            let nvec: Vec<i64> = r.iter().zip(c_s.iter()).map(|(a, b)| a + b).collect();
            let mut out = TauElement::zero();
            add_central_row(
                ctx,
                &mut out,
                &[(*b_idx, s_exps[*a_idx])],
                n0,
                &nvec,
                &CycScalar::one(ord),
            );
            if a_idx == b_idx {
                let coeffs: Vec<(usize, i64)> = std::iter::once(*r0)
                    .chain(r.iter().copied())
                    .enumerate()
                    .collect();
                add_central_row(ctx, &mut out, &coeffs, n0, &nvec, &CycScalar::one(ord));
            }
            out
        }
        (Central { .. }, Deriv { .. }) => bracket_symbols(ctx, b, a, cfg).scale(&CycScalar::from_int(ord, -1)),
        (Deriv { i: a_idx, s0: r0, s: r }, Deriv { i: b_idx, s0: q0, s: q }) => {
            let mut r_exps = Vec::with_capacity(r.len() + 1);
            r_exps.push(*r0);
            r_exps.extend_from_slice(r);
            let mut s_exps = Vec::with_capacity(q.len() + 1);
            s_exps.push(*q0);
            s_exps.extend_from_slice(q);
            let n0 = r0 + q0;
            let nvec: Vec<i64> = r.iter().zip(q.iter()).map(|(a, b)| a + b).collect();
            let mut out = TauElement::zero();
            let sa = s_exps[*a_idx];
            if sa != 0 {
                out.add_term(
                    Deriv { i: *b_idx, s0: n0, s: nvec.clone() },
                    CycScalar::from_int(ord, sa),
                );
            }
            let rb = r_exps[*b_idx];
            if rb != 0 {
                out.add_term(
                    Deriv { i: *a_idx, s0: n0, s: nvec.clone() },
                    CycScalar::from_int(ord, -rb),
                );
            }
            // φ1 = −s_a r_b Σ_p r_p K_p, φ2 = r_a s_b Σ_p r_p K_p
            let coeffs: Vec<(usize, i64)> = r_exps.iter().copied().enumerate().collect();
            let phi1_scale = &cfg.c1 * &CycScalar::from_int(ord, -(sa * rb));
            add_central_row(ctx, &mut out, &coeffs, n0, &nvec, &phi1_scale);
            let phi2_scale = &cfg.c2 * &CycScalar::from_int(ord, r_exps[*a_idx] * s_exps[*b_idx]);
            add_central_row(ctx, &mut out, &coeffs, n0, &nvec, &phi2_scale);
            out
        }
    }
}

/// Bilinear extension of [`bracket_symbols`].
pub fn bracket(
    ctx: &TauContext,
    a: &TauElement,
    b: &TauElement,
    cfg: &CocycleConfig,
) -> TauElement {
    let mut out = TauElement::zero();
    for (sa, ca) in a.iter() {
        for (sb, cb) in b.iter() {
            let br = bracket_symbols(ctx, sa, sb, cfg);
            out.add_in(&br.scale(&(ca * cb)));
        }
    }
    out
}

/// [x,[y,z]] + [y,[z,x]] + [z,[x,y]], which must vanish identically.
pub fn jacobiator(
    ctx: &TauContext,
    x: &BasisSymbol,
    y: &BasisSymbol,
    z: &BasisSymbol,
    cfg: &CocycleConfig,
) -> TauElement {
    let one = CycScalar::one(ctx.order());
    let ex = TauElement::from_symbol(x.clone(), one.clone());
    let ey = TauElement::from_symbol(y.clone(), one.clone());
    let ez = TauElement::from_symbol(z.clone(), one);
    let mut acc = bracket(ctx, &ex, &bracket(ctx, &ey, &ez, cfg), cfg);
    acc.add_in(&bracket(ctx, &ey, &bracket(ctx, &ez, &ex, cfg), cfg));
    acc.add_in(&bracket(ctx, &ez, &bracket(ctx, &ex, &ey, cfg), cfg));
    acc
}

/// Verifies the Jacobi identity on the sampled symbol triples.
pub fn check_jacobi(
    ctx: &TauContext,
    samples: &[(BasisSymbol, BasisSymbol, BasisSymbol)],
    cfg: &CocycleConfig,
) -> crate::report::Report {
    let mut rep = crate::report::Report::new("jacobi");
    let mut failures = 0usize;
    for (x, y, z) in samples {
        let j = jacobiator(ctx, x, y, z, cfg);
        if !j.is_zero() {
            failures += 1;
            rep.fail(
                "jacobiator nonzero",
                serde_json::json!({
                    "triple": [x, y, z],
                    "residual": j.to_json(),
                }),
            );
        }
    }
    rep.check(
        format!("{} sampled triples have zero Jacobiator", samples.len()),
        failures == 0,
        || serde_json::json!({"failures": failures}),
    );
    rep
}

/// Verifies that the §2.10 action maps each sampled dA-relation vector into
/// dA (so the action descends to Ω/dA). The relation vector at degree u is
/// Σ_p u_p t₀^{u₀}t^{u}K_p; the action is applied termwise in Ω and the
/// result must normalize to zero.
pub fn check_da_equivariance(
    ctx: &TauContext,
    samples: &[(BasisSymbol, (i64, Vec<i64>))],
) -> crate::report::Report {
    let mut rep = crate::report::Report::new("da-equivariance");
    let mut failures = 0usize;
    for (d, (u0, u)) in samples {
        let BasisSymbol::Deriv { i: a_idx, s0: r0, s: r } = d else {
            rep.fail(
                "sample is not a derivation",
                serde_json::json!({"symbol": d}),
            );
            continue;
        };
        let mut u_exps = Vec::with_capacity(u.len() + 1);
        u_exps.push(*u0);
        u_exps.extend_from_slice(u);
        let n0 = r0 + u0;
        let nvec: Vec<i64> = r.iter().zip(u.iter()).map(|(a, b)| a + b).collect();
        let mut r_exps = Vec::with_capacity(r.len() + 1);
        r_exps.push(*r0);
        r_exps.extend_from_slice(r);
        // d · Σ_b u_b K_b@u, expanded termwise in Ω and then normalized
        let mut acc = TauElement::zero();
        for (b, &ub) in u_exps.iter().enumerate() {
            if ub == 0 {
                continue;
            }
            let ub_scalar = CycScalar::from_int(ctx.order(), ub);
            // u_a K_b@(u+r)
            let ua = u_exps[*a_idx];
            if ua != 0 {
                let c = &ub_scalar * &CycScalar::from_int(ctx.order(), ua);
                acc.add_in(&normalize_central(ctx, b, n0, &nvec, c).expect("valid degree"));
            }
            // δ_{ab} Σ_p r_p K_p@(u+r)
            if b == *a_idx {
                for (p, &rp) in r_exps.iter().enumerate() {
                    if rp == 0 {
                        continue;
                    }
                    let c = &ub_scalar * &CycScalar::from_int(ctx.order(), rp);
                    acc.add_in(&normalize_central(ctx, p, n0, &nvec, c).expect("valid degree"));
                }
            }
        }
        if !acc.is_zero() {
            failures += 1;
            rep.fail(
                "action leaves dA",
                serde_json::json!({
                    "derivation": d,
                    "degree": [u0, u],
                    "residual": acc.to_json(),
                }),
            );
        }
    }
    rep.check(
        format!("{} sampled (derivation, degree) pairs stay in dA", samples.len()),
        failures == 0,
        || serde_json::json!({"failures": failures}),
    );
    rep
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

    fn sl3_twisted_ctx() -> TauContext {
        let (alg, sigma0) = build_sl3_twisted(4);
        let autos = vec![sigma0, FiniteAutomorphism::identity(4, 8)];
        let decomp = eigen_decompose(&alg, &autos).unwrap();
        TauContext::new(alg, decomp)
    }

    /// m₀ = 2, m₁ = 1 context used by the normal-form examples.
    fn twisted_lattice_ctx() -> TauContext {
        sl3_twisted_ctx()
    }

    #[test]
    fn normal_form_degree_zero_keeps_k0() {
        let ctx = twisted_lattice_ctx();
        let e = normalize_central(&ctx, 0, 0, &[0], CycScalar::one(4)).unwrap();
        assert_eq!(
            e,
            TauElement::from_symbol(
                BasisSymbol::Central { i: 0, s0: 0, s: vec![0] },
                CycScalar::one(4)
            )
        );
    }

    #[test]
    fn normal_form_rewrites_pivot() {
        // with m₀=2, m₁=1: t₀²t₁K₀ → −(1/2)·t₀²t₁K₁
        let ctx = twisted_lattice_ctx();
        let e = normalize_central(&ctx, 0, 2, &[1], CycScalar::one(4)).unwrap();
        let expected = TauElement::from_symbol(
            BasisSymbol::Central { i: 1, s0: 2, s: vec![1] },
            CycScalar::from_rat(4, crate::scalar::parse_rat("-1/2").unwrap()),
        );
        assert_eq!(e, expected);
        // idempotent: the surviving symbol is already normal
        let again = normalize_central(&ctx, 1, 2, &[1], CycScalar::one(4)).unwrap();
        assert_eq!(
            again,
            TauElement::from_symbol(
                BasisSymbol::Central { i: 1, s0: 2, s: vec![1] },
                CycScalar::one(4)
            )
        );
    }

    #[test]
    fn normal_form_pivot_skips_zero_exponents() {
        // t₁^{m₁}K₀ at degree (0, m₁): exponent₀ = 0 so the pivot is index 1
        // and K₀ is untouched
        let ctx = twisted_lattice_ctx();
        let e = normalize_central(&ctx, 0, 0, &[1], CycScalar::one(4)).unwrap();
        assert_eq!(
            e,
            TauElement::from_symbol(
                BasisSymbol::Central { i: 0, s0: 0, s: vec![1] },
                CycScalar::one(4)
            )
        );
        // while K₁ at the same degree is rewritten to zero (relation is 1·K₁)
        let z = normalize_central(&ctx, 1, 0, &[1], CycScalar::one(4)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn bad_degree_is_rejected() {
        let ctx = twisted_lattice_ctx();
        assert!(matches!(
            normalize_central(&ctx, 0, 1, &[0], CycScalar::one(4)),
            Err(TauError::DegreeNotInLattice(..))
        ));
    }

    #[test]
    fn deriv_loop_bracket_spec_example() {
        // [d₁, X(k₀,k)] = k₁ X(k₀,k)
        let ctx = sl2_ctx();
        let d1 = ctx.deriv_symbol(1, 0, vec![0]).unwrap();
        let x = ctx.loop_symbol(0, 2, vec![3]).unwrap();
        let out = bracket_symbols(&ctx, &d1, &x, &CocycleConfig::zero(1));
        assert_eq!(
            out,
            TauElement::from_symbol(
                ctx.loop_symbol(0, 2, vec![3]).unwrap(),
                CycScalar::from_int(1, 3)
            )
        );
    }

    #[test]
    fn deriv_central_cancellation_spec_example() {
        // [t₀^{m₀}d₀, t₀^{−m₀}K₀] = −m₀K₀ + m₀K₀ = 0 (m₀ = 2 here)
        let ctx = twisted_lattice_ctx();
        let d = ctx.deriv_symbol(0, 2, vec![0]).unwrap();
        let k = ctx.central_symbol(0, -2, vec![0]).unwrap();
        let out = bracket_symbols(&ctx, &d, &k, &CocycleConfig::zero(4));
        assert!(out.is_zero(), "got {out:?}");
    }

    #[test]
    fn centrality_of_nonzero_degree_central() {
        let ctx = twisted_lattice_ctx();
        let k = ctx.central_symbol(1, 2, vec![0]).unwrap();
        let x = ctx.loop_symbol(0, 0, vec![0]).unwrap();
        let cfg = CocycleConfig::zero(4);
        assert!(bracket_symbols(&ctx, &k, &x, &cfg).is_zero());
        assert!(bracket_symbols(&ctx, &x, &k, &cfg).is_zero());
        let k2 = ctx.central_symbol(0, 0, vec![0]).unwrap();
        assert!(bracket_symbols(&ctx, &k, &k2, &cfg).is_zero());
    }

    #[test]
    fn phi_values_on_the_degree_pair() {
        // φ1(t₀^{m₀}d₀, t₀^{−m₀}d₀) = m₀³K₀ and φ2 = −m₀³K₀ with m₀ = 2
        let ctx = twisted_lattice_ctx();
        let d_plus = ctx.deriv_symbol(0, 2, vec![0]).unwrap();
        let d_minus = ctx.deriv_symbol(0, -2, vec![0]).unwrap();
        let phi1 = bracket_symbols(&ctx, &d_plus, &d_minus, &CocycleConfig::from_ints(4, 1, 0));
        let witt = bracket_symbols(&ctx, &d_plus, &d_minus, &CocycleConfig::zero(4));
        let mut phi1_only = phi1.clone();
        for (s, c) in witt.iter() {
            phi1_only.add_term(s.clone(), -c);
        }
        assert_eq!(
            phi1_only,
            TauElement::from_symbol(
                BasisSymbol::Central { i: 0, s0: 0, s: vec![0] },
                CycScalar::from_int(4, 8)
            )
        );
        let phi2 = bracket_symbols(&ctx, &d_plus, &d_minus, &CocycleConfig::from_ints(4, 0, 1));
        let mut phi2_only = phi2.clone();
        for (s, c) in witt.iter() {
            phi2_only.add_term(s.clone(), -c);
        }
        assert_eq!(
            phi2_only,
            TauElement::from_symbol(
                BasisSymbol::Central { i: 0, s0: 0, s: vec![0] },
                CycScalar::from_int(4, -8)
            )
        );
    }

    #[test]
    fn loop_loop_bracket_has_central_term() {
        // sl2: [e⊗t₀, f⊗t₀⁻¹] = h + (e,f)(K₀ + 0·K₁) = h + K₀
        let ctx = sl2_ctx();
        let e_idx = ctx
            .decomp
            .indices_where(|v| v.coords[0].is_one() && v.coords[1].is_zero() && v.coords[2].is_zero())[0];
        let f_idx = ctx
            .decomp
            .indices_where(|v| v.coords[1].is_one() && v.coords[0].is_zero() && v.coords[2].is_zero())[0];
        let a = ctx.loop_symbol(e_idx, 1, vec![0]).unwrap();
        let b = ctx.loop_symbol(f_idx, -1, vec![0]).unwrap();
        let out = bracket_symbols(&ctx, &a, &b, &CocycleConfig::zero(1));
        // h-part present at degree 0 plus K₀ with coefficient (e,f)·k₀ = 1
        let k0_term = out.iter().find(|(s, _)| {
            matches!(s, BasisSymbol::Central { i: 0, s0: 0, s } if s.iter().all(|&x| x == 0))
        });
        assert!(k0_term.is_some());
        assert!(k0_term.unwrap().1.is_one());
    }

    #[test]
    fn antisymmetry_holds_after_normalization() {
        let ctx = twisted_lattice_ctx();
        let cfg = CocycleConfig::from_ints(4, 1, 1);
        let syms = vec![
            ctx.deriv_symbol(0, 2, vec![1]).unwrap(),
            ctx.deriv_symbol(1, -2, vec![0]).unwrap(),
            ctx.deriv_symbol(1, 0, vec![-1]).unwrap(),
            ctx.loop_symbol(0, 0, vec![0]).unwrap(),
            ctx.loop_symbol(4, 1, vec![2]).unwrap(),
            ctx.central_symbol(1, 2, vec![-1]).unwrap(),
        ];
        for a in &syms {
            for b in &syms {
                let mut ab = bracket_symbols(&ctx, a, b, &cfg);
                let ba = bracket_symbols(&ctx, b, a, &cfg);
                ab.add_in(&ba);
                assert!(ab.is_zero(), "[{a:?},{b:?}] not antisymmetric: {ab:?}");
            }
        }
    }

    #[test]
    fn degree_additivity() {
        let ctx = twisted_lattice_ctx();
        let cfg = CocycleConfig::from_ints(4, 1, 0);
        let a = ctx.deriv_symbol(0, 2, vec![1]).unwrap();
        let b = ctx.loop_symbol(4, 1, vec![-2]).unwrap();
        let out = bracket_symbols(&ctx, &a, &b, &cfg);
        for (s, _) in out.iter() {
            let (d0, d) = s.degree();
            assert_eq!(d0, 3);
            assert_eq!(d, &[-1]);
        }
    }

    #[test]
    fn da_equivariance_spec_examples() {
        let ctx = twisted_lattice_ctx();
        // d_a on the degree-(0,0) relation: trivially in dA
        let samples = vec![
            (ctx.deriv_symbol(1, 0, vec![0]).unwrap(), (0, vec![0])),
            // t₁^{m₁}d₁ applied to the degree-(m₀, 0) relation
            (ctx.deriv_symbol(1, 0, vec![1]).unwrap(), (2, vec![0])),
            (ctx.deriv_symbol(0, 2, vec![3]).unwrap(), (2, vec![-1])),
            (ctx.deriv_symbol(0, -4, vec![0]).unwrap(), (0, vec![2])),
        ];
        let rep = check_da_equivariance(&ctx, &samples);
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn jacobi_on_mixed_triples() {
        let ctx = twisted_lattice_ctx();
        for (c1, c2) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let cfg = CocycleConfig::from_ints(4, c1, c2);
            let trip = [
                (
                    ctx.deriv_symbol(0, 0, vec![0]).unwrap(),
                    ctx.deriv_symbol(1, 0, vec![0]).unwrap(),
                    ctx.loop_symbol(4, 1, vec![2]).unwrap(),
                ),
                (
                    ctx.deriv_symbol(0, 2, vec![1]).unwrap(),
                    ctx.deriv_symbol(1, -2, vec![2]).unwrap(),
                    ctx.deriv_symbol(0, 0, vec![-1]).unwrap(),
                ),
                (
                    ctx.loop_symbol(0, 0, vec![1]).unwrap(),
                    ctx.loop_symbol(2, 0, vec![-1]).unwrap(),
                    ctx.loop_symbol(5, 1, vec![0]).unwrap(),
                ),
                (
                    ctx.deriv_symbol(1, 2, vec![-1]).unwrap(),
                    ctx.central_symbol(1, -2, vec![1]).unwrap(),
                    ctx.deriv_symbol(0, 0, vec![1]).unwrap(),
                ),
            ];
            let rep = check_jacobi(
                &ctx,
                &trip
                    .iter()
                    .map(|(a, b, c)| (a.clone(), b.clone(), c.clone()))
                    .collect::<Vec<_>>(),
                &cfg,
            );
            assert!(
                rep.all_passed(),
                "cocycle ({c1},{c2}): {:?}",
                rep.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn tau_element_serde() {
        let ctx = sl2_ctx();
        let sym = ctx.loop_symbol(0, 1, vec![-1]).unwrap();
        let s = serde_json::to_string(&sym).unwrap();
        let back: BasisSymbol = serde_json::from_str(&s).unwrap();
        assert_eq!(sym, back);
    }
}

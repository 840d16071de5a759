//! Finite-dimensional simple Lie algebras with invariant form, commuting
//! finite-order automorphisms, and their simultaneous eigenspace data.
//!
//! An algebra is stored through exact structure constants on a basis that is
//! required to diagonalize the adjoint action of the designated Cartan
//! subalgebra; all root bookkeeping reads weights off that basis. The
//! eigenspace decomposition then refines each h(0̄)-weight space into joint
//! eigenspaces of the automorphisms (which commute with ad h(0̄) because
//! h(0̄) is fixed pointwise).

use crate::linalg::{Mat, SpanBuilder};
use crate::report::Report;
use crate::roots::RootSystem;
use crate::scalar::{CycScalar, Rat};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("unsupported Cartan type {0:?}")]
    UnsupportedType(String),
    #[error("basis matrices are linearly dependent")]
    DependentBasis,
    #[error("commutator of basis pair ({0},{1}) is outside the span of the basis")]
    NotClosed(usize, usize),
    #[error("structure constants violate {0}; witness {1}")]
    BadStructure(&'static str, String),
    #[error("basis does not diagonalize ad(h) for cartan index {0}")]
    NotAdDiagonal(usize),
    #[error("invalid automorphism data: {0}")]
    BadAutomorphism(String),
    #[error("eigenspace dimensions sum to {0}, expected {1}; input data corrupt")]
    NotDiagonalizable(usize, usize),
    #[error("scalar error: {0}")]
    Scalar(#[from] crate::scalar::ScalarError),
}

/// Sparse bracket table entry: [x_i, x_j] = Σ c_k x_k.
pub type SparseVec = Vec<(usize, CycScalar)>;

#[derive(Clone)]
pub struct SimpleLieAlgebraData {
    order: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    brackets: Vec<SparseVec>, // index i*dim + j
    pub form: Mat,
    pub cartan: Vec<usize>,
    pub dual_coxeter: u32,
    /// weights[j] = values of the adjoint weight of basis vector j on the
    /// Cartan basis vectors (in `cartan` order).
    pub weights: Vec<Vec<CycScalar>>,
}

impl SimpleLieAlgebraData {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zero_vec(&self) -> Vec<CycScalar> {
        vec![CycScalar::zero(self.order); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<CycScalar> {
        let mut v = self.zero_vec();
        v[i] = CycScalar::one(self.order);
        v
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i * self.dim + j]
    }

    /// [x, y] for coordinate vectors.
    pub fn bracket(&self, x: &[CycScalar], y: &[CycScalar]) -> Vec<CycScalar> {
        let mut out = self.zero_vec();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Invariant form (x, y).
    pub fn pair(&self, x: &[CycScalar], y: &[CycScalar]) -> CycScalar {
        let fx = self.form.apply(y);
        let mut acc = CycScalar::zero(self.order);
        for (a, b) in x.iter().zip(&fx) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    /// Builds an algebra from explicit matrices of a faithful representation.
    /// Structure constants come from commutators, the form is the trace form,
    /// and the basis must diagonalize ad(cartan).
    pub fn from_matrices(
        order: u32,
        mats: &[Mat],
        labels: Vec<String>,
        cartan: Vec<usize>,
        dual_coxeter: u32,
    ) -> Result<Self, AlgebraError> {
        let dim = mats.len();
        let d = mats[0].rows;
        // flatten basis matrices into columns
        let mut flat = Mat::zero(order, d * d, dim);
        for (c, m) in mats.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    *flat.at_mut(i * d + j, c) = m.at(i, j).clone();
                }
            }
        }
        if flat.rank() != dim {
            return Err(AlgebraError::DependentBasis);
        }
        let mut brackets = vec![SparseVec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let comm = mats[i].matmul(&mats[j]).sub(&mats[j].matmul(&mats[i]));
                let mut b = vec![CycScalar::zero(order); d * d];
                for r in 0..d {
                    for c in 0..d {
                        b[r * d + c] = comm.at(r, c).clone();
                    }
                }
                let x = flat.solve(&b).ok_or(AlgebraError::NotClosed(i, j))?;
                brackets[i * dim + j] = x
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
            }
        }
        let mut form = Mat::zero(order, dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = mats[i].matmul(&mats[j]);
                let mut tr = CycScalar::zero(order);
                for r in 0..d {
                    tr += p.at(r, r);
                }
                *form.at_mut(i, j) = tr;
            }
        }
        Self::from_parts(order, labels, brackets, form, cartan, dual_coxeter)
    }

    /// Builds from raw structure constants (the JSON import path) and
    /// validates every structural invariant.
    pub fn from_parts(
        order: u32,
        labels: Vec<String>,
        brackets: Vec<SparseVec>,
        form: Mat,
        cartan: Vec<usize>,
        dual_coxeter: u32,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut alg = Self {
            order,
            dim,
            labels,
            brackets,
            form,
            cartan,
            dual_coxeter,
            weights: vec![],
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&mut self) -> Result<(), AlgebraError> {
        let n = self.dim;
        // antisymmetry
        for i in 0..n {
            for j in 0..n {
                let mut s = self.sparse_to_dense(self.bracket_basis(i, j));
                let t = self.sparse_to_dense(self.bracket_basis(j, i));
                for (a, b) in s.iter_mut().zip(&t) {
                    *a += b;
                }
                if s.iter().any(|c| !c.is_zero()) {
                    return Err(AlgebraError::BadStructure(
                        "antisymmetry",
                        format!("pair ({i},{j})"),
                    ));
                }
            }
        }
        // Jacobi on all basis triples
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let xi = self.basis_vec(i);
                    let xj = self.basis_vec(j);
                    let xk = self.basis_vec(k);
                    let mut acc = self.bracket(&xi, &self.bracket(&xj, &xk));
                    for (a, b) in acc
                        .iter_mut()
                        .zip(self.bracket(&xj, &self.bracket(&xk, &xi)))
                    {
                        *a += &b;
                    }
                    for (a, b) in acc
                        .iter_mut()
                        .zip(self.bracket(&xk, &self.bracket(&xi, &xj)))
                    {
                        *a += &b;
                    }
                    if acc.iter().any(|c| !c.is_zero()) {
                        return Err(AlgebraError::BadStructure(
                            "Jacobi identity",
                            format!("triple ({i},{j},{k})"),
                        ));
                    }
                }
            }
        }
        // form: symmetric, nondegenerate, invariant
        for i in 0..n {
            for j in 0..n {
                if self.form.at(i, j) != self.form.at(j, i) {
                    return Err(AlgebraError::BadStructure(
                        "form symmetry",
                        format!("({i},{j})"),
                    ));
                }
            }
        }
        if self.form.rank() != n {
            return Err(AlgebraError::BadStructure("form nondegeneracy", String::new()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // ([x_i,x_j],x_k) + (x_j,[x_i,x_k]) = 0
                    let a = self.pair(
                        &self.bracket(&self.basis_vec(i), &self.basis_vec(j)),
                        &self.basis_vec(k),
                    );
                    let b = self.pair(
                        &self.basis_vec(j),
                        &self.bracket(&self.basis_vec(i), &self.basis_vec(k)),
                    );
                    if !(&a + &b).is_zero() {
                        return Err(AlgebraError::BadStructure(
                            "form invariance",
                            format!("triple ({i},{j},{k})"),
                        ));
                    }
                }
            }
        }
        // ad(cartan) diagonal on the basis; collect weights
        let mut weights = vec![vec![CycScalar::zero(self.order); self.cartan.len()]; n];
        for (ci, &c) in self.cartan.iter().enumerate() {
            for j in 0..n {
                for (k, coeff) in self.bracket_basis(c, j) {
                    if *k == j {
                        weights[j][ci] = coeff.clone();
                    } else if !coeff.is_zero() {
                        return Err(AlgebraError::NotAdDiagonal(c));
                    }
                }
            }
        }
        self.weights = weights;
        Ok(())
    }

    fn sparse_to_dense(&self, s: &SparseVec) -> Vec<CycScalar> {
        let mut v = self.zero_vec();
        for (k, c) in s {
            v[*k] = c.clone();
        }
        v
    }

    /// Kills the root data of (g, h): the set of nonzero basis weights.
    pub fn root_system(&self) -> RootSystem {
        let nonzero: Vec<Vec<CycScalar>> = self
            .weights
            .iter()
            .filter(|w| w.iter().any(|c| !c.is_zero()))
            .cloned()
            .collect();
        let h_vecs: Vec<Vec<CycScalar>> =
            self.cartan.iter().map(|&c| self.basis_vec(c)).collect();
        RootSystem::new(self.order, nonzero, &h_vecs, self)
    }
}

/// Supported built-in Chevalley constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CartanType {
    A1,
    A2,
    B2,
}

impl std::str::FromStr for CartanType {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A1" | "a1" => Ok(Self::A1),
            "A2" | "a2" => Ok(Self::A2),
            "B2" | "b2" => Ok(Self::B2),
            other => Err(AlgebraError::UnsupportedType(other.to_string())),
        }
    }
}

fn unit_mat(order: u32, d: usize, entries: &[(usize, usize, i64)]) -> Mat {
    let mut m = Mat::zero(order, d, d);
    for &(i, j, c) in entries {
        *m.at_mut(i, j) = CycScalar::from_int(order, c);
    }
    m
}

/// Chevalley basis of a built-in type over Q(ξ_order). Structure constants
/// are integral; the trace form of the defining representation gives long
/// roots squared length 2.
pub fn build_chevalley(ty: CartanType, order: u32) -> SimpleLieAlgebraData {
    let (mats, labels, cartan, hvee) = match ty {
        CartanType::A1 => {
            let mats = vec![
                unit_mat(order, 2, &[(0, 1, 1)]),          // e
                unit_mat(order, 2, &[(1, 0, 1)]),          // f
                unit_mat(order, 2, &[(0, 0, 1), (1, 1, -1)]), // h
            ];
            (mats, vec!["e", "f", "h"], vec![2], 2)
        }
        CartanType::A2 => {
            let mats = vec![
                unit_mat(order, 3, &[(0, 1, 1)]),
                unit_mat(order, 3, &[(1, 2, 1)]),
                unit_mat(order, 3, &[(0, 2, 1)]),
                unit_mat(order, 3, &[(1, 0, 1)]),
                unit_mat(order, 3, &[(2, 1, 1)]),
                unit_mat(order, 3, &[(2, 0, 1)]),
                unit_mat(order, 3, &[(0, 0, 1), (1, 1, -1)]),
                unit_mat(order, 3, &[(1, 1, 1), (2, 2, -1)]),
            ];
            (
                mats,
                vec!["e1", "e2", "e13", "f1", "f2", "f31", "h1", "h2"],
                vec![6, 7],
                3,
            )
        }
        CartanType::B2 => {
            // symplectic presentation (B2 and C2 share their root system);
            // rows/cols ordered (1, 2, 1', 2')
            let mats = vec![
                unit_mat(order, 4, &[(0, 1, 1), (3, 2, -1)]), // ε1−ε2
                unit_mat(order, 4, &[(1, 0, 1), (2, 3, -1)]), // ε2−ε1
                unit_mat(order, 4, &[(0, 2, 1)]),             // 2ε1
                unit_mat(order, 4, &[(2, 0, 1)]),             // −2ε1
                unit_mat(order, 4, &[(1, 3, 1)]),             // 2ε2
                unit_mat(order, 4, &[(3, 1, 1)]),             // −2ε2
                unit_mat(order, 4, &[(0, 3, 1), (1, 2, 1)]),  // ε1+ε2
                unit_mat(order, 4, &[(3, 0, 1), (2, 1, 1)]),  // −ε1−ε2
                unit_mat(order, 4, &[(0, 0, 1), (2, 2, -1)]), // h1
                unit_mat(order, 4, &[(1, 1, 1), (3, 3, -1)]), // h2
            ];
            (
                mats,
                vec![
                    "x12", "x21", "x+1", "x-1", "x+2", "x-2", "x++", "x--", "h1", "h2",
                ],
                vec![8, 9],
                3,
            )
        }
    };
    SimpleLieAlgebraData::from_matrices(
        order,
        &mats,
        labels.into_iter().map(String::from).collect(),
        cartan,
        hvee,
    )
    .expect("built-in Chevalley construction is valid")
}

/// The sl₃ configuration twisted by σ₀: x ↦ −xᵗ, written on a basis adapted
/// to a σ₀-stable Cartan (so the fixed Cartan h(0̄) is one of the basis
/// vectors). Lives over Q(ξ_order) with 4 | order.
pub fn build_sl3_twisted(order: u32) -> (SimpleLieAlgebraData, FiniteAutomorphism) {
    assert!(order % 4 == 0, "the adapted sl3 basis needs i in the field");
    let i = CycScalar::root_of_unity(order, (order / 4) as i64);
    let half = CycScalar::from_rat(order, Rat::new(1.into(), 2.into()));
    let one = CycScalar::one(order);
    let z = CycScalar::zero(order);
    let m = |rows: [[CycScalar; 3]; 3]| {
        Mat::from_rows(order, rows.into_iter().map(|r| r.to_vec()).collect())
    };
    let h = m([
        [z.clone(), -&i, z.clone()],
        [i.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), z.clone()],
    ]);
    let b = m([
        [one.clone(), z.clone(), z.clone()],
        [z.clone(), one.clone(), z.clone()],
        [z.clone(), z.clone(), CycScalar::from_int(order, -2)],
    ]);
    let ihalf = &i * &half;
    let fpm = m([
        [half.clone(), ihalf.clone(), z.clone()],
        [ihalf.clone(), -&half, z.clone()],
        [z.clone(), z.clone(), z.clone()],
    ]);
    let fmp = m([
        [half.clone(), -&ihalf, z.clone()],
        [-&ihalf, -&half, z.clone()],
        [z.clone(), z.clone(), z.clone()],
    ]);
    let fp0 = m([
        [z.clone(), z.clone(), one.clone()],
        [z.clone(), z.clone(), i.clone()],
        [z.clone(), z.clone(), z.clone()],
    ]);
    let f0m = m([
        [z.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), z.clone()],
        [half.clone(), ihalf.clone(), z.clone()],
    ]);
    let fm0 = m([
        [z.clone(), z.clone(), one.clone()],
        [z.clone(), z.clone(), -&i],
        [z.clone(), z.clone(), z.clone()],
    ]);
    let f0p = m([
        [z.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), z.clone()],
        [half.clone(), -&ihalf, z.clone()],
    ]);
    let mats = vec![h, b, fpm, fmp, fp0, f0m, fm0, f0p];
    let labels = ["H", "B", "F+-", "F-+", "F+0", "F0-", "F-0", "F0+"]
        .into_iter()
        .map(String::from)
        .collect();
    let alg = SimpleLieAlgebraData::from_matrices(order, &mats, labels, vec![0, 1], 3)
        .expect("adapted sl3 basis is valid");
    // σ₀ in the adapted basis: fixes H, negates B and F±∓, and swaps the
    // weight-(±1) pairs with the scalings forced by x ↦ −xᵗ.
    let mut sig = Mat::zero(order, 8, 8);
    *sig.at_mut(0, 0) = CycScalar::one(order);
    *sig.at_mut(1, 1) = CycScalar::from_int(order, -1);
    *sig.at_mut(2, 2) = CycScalar::from_int(order, -1);
    *sig.at_mut(3, 3) = CycScalar::from_int(order, -1);
    *sig.at_mut(5, 4) = CycScalar::from_int(order, -2); // F+0 ↦ −2 F0−
    *sig.at_mut(4, 5) = -&half; // F0− ↦ −½ F+0
    *sig.at_mut(7, 6) = CycScalar::from_int(order, -2); // F−0 ↦ −2 F0+
    *sig.at_mut(6, 7) = -&half; // F0+ ↦ −½ F−0
    (
        alg,
        FiniteAutomorphism {
            matrix: sig,
            order: 2,
        },
    )
}

/// The order-2 automorphism of sl₂ with e, f ↦ −e, −f and h ↦ h
/// (conjugation by diag(i, −i)); grades sl₂ by Z/2.
pub fn sl2_sign_automorphism(order: u32) -> FiniteAutomorphism {
    let mut m = Mat::zero(order, 3, 3);
    *m.at_mut(0, 0) = CycScalar::from_int(order, -1);
    *m.at_mut(1, 1) = CycScalar::from_int(order, -1);
    *m.at_mut(2, 2) = CycScalar::one(order);
    FiniteAutomorphism { matrix: m, order: 2 }
}

/// The Chevalley involution of sl₂: e ↦ −f, f ↦ −e, h ↦ −h.
pub fn sl2_chevalley_involution(order: u32) -> FiniteAutomorphism {
    let mut m = Mat::zero(order, 3, 3);
    *m.at_mut(1, 0) = CycScalar::from_int(order, -1);
    *m.at_mut(0, 1) = CycScalar::from_int(order, -1);
    *m.at_mut(2, 2) = CycScalar::from_int(order, -1);
    FiniteAutomorphism { matrix: m, order: 2 }
}

#[derive(Clone)]
pub struct FiniteAutomorphism {
    pub matrix: Mat,
    pub order: u32,
}

impl FiniteAutomorphism {
    pub fn identity(order: u32, dim: usize) -> Self {
        Self {
            matrix: Mat::identity(order, dim),
            order: 1,
        }
    }
}

/// Confirms pairwise commutation, exact orders, bracket- and form-invariance.
/// Violations are reported, not thrown.
pub fn validate_automorphisms(
    alg: &SimpleLieAlgebraData,
    autos: &[FiniteAutomorphism],
) -> Report {
    let mut rep = Report::new("automorphisms");
    let n = alg.dim;
    for (idx, a) in autos.iter().enumerate() {
        if a.matrix.rows != n || a.matrix.cols != n {
            rep.fail(
                format!("σ{idx} shape"),
                json!({"rows": a.matrix.rows, "cols": a.matrix.cols, "expected": n}),
            );
            continue;
        }
        let id = Mat::identity(alg.order, n);
        rep.check(
            format!("σ{idx}^m = id (m = {})", a.order),
            a.matrix.pow(a.order) == id,
            || json!({"auto": idx}),
        );
        let minimal = (1..a.order).all(|k| a.matrix.pow(k) != id);
        rep.check(format!("σ{idx} order minimal"), minimal, || {
            json!({"auto": idx, "reason": "order not minimal"})
        });
        // bracket preservation on all basis pairs
        let mut ok = true;
        let mut wit = json!(null);
        'outer: for i in 0..n {
            for j in 0..n {
                let lhs = {
                    let br = alg.bracket(&alg.basis_vec(i), &alg.basis_vec(j));
                    a.matrix.apply(&br)
                };
                let rhs = alg.bracket(
                    &a.matrix.apply(&alg.basis_vec(i)),
                    &a.matrix.apply(&alg.basis_vec(j)),
                );
                if lhs != rhs {
                    ok = false;
                    wit = json!({"auto": idx, "pair": [i, j]});
                    break 'outer;
                }
            }
        }
        rep.check(format!("σ{idx} preserves bracket"), ok, || wit.clone());
        // form invariance on all basis pairs
        let mut ok = true;
        let mut wit = json!(null);
        'outer2: for i in 0..n {
            for j in 0..n {
                let lhs = alg.pair(
                    &a.matrix.apply(&alg.basis_vec(i)),
                    &a.matrix.apply(&alg.basis_vec(j)),
                );
                if &lhs != alg.form.at(i, j) {
                    ok = false;
                    wit = json!({"auto": idx, "pair": [i, j]});
                    break 'outer2;
                }
            }
        }
        rep.check(format!("σ{idx} preserves form"), ok, || wit.clone());
    }
    // pairwise commutation
    for i in 0..autos.len() {
        for j in i + 1..autos.len() {
            if autos[i].matrix.rows != n || autos[j].matrix.rows != n {
                continue;
            }
            let ab = autos[i].matrix.matmul(&autos[j].matrix);
            let ba = autos[j].matrix.matmul(&autos[i].matrix);
            rep.check(format!("σ{i} σ{j} = σ{j} σ{i}"), ab == ba, || {
                json!({"pair": [i, j]})
            });
        }
    }
    rep
}

/// One simultaneous eigenvector of (σ₀, …, σ_n) refined by its h(0̄)-weight.
#[derive(Clone)]
pub struct EigenVector {
    pub coords: Vec<CycScalar>,
    /// class of k₀ in Z/m₀
    pub k0: u32,
    /// class of k̄ in Λ = Π Z/m_i
    pub kbar: Vec<u32>,
    /// h(0̄)-weight, values on the h(0̄) basis
    pub alpha: Vec<CycScalar>,
}

pub struct EigenDecomposition {
    pub order: u32,
    /// automorphism orders m₀, …, m_n
    pub m: Vec<u32>,
    pub vectors: Vec<EigenVector>,
    /// basis of h(0̄) in g-coordinates
    pub h0_basis: Vec<Vec<CycScalar>>,
    /// columns of `vectors` coords, inverted: g-coordinates → eigenbasis coefficients
    expand: Mat,
}

impl EigenDecomposition {
    /// Expands a g-coordinate vector in the eigenbasis.
    pub fn expand(&self, v: &[CycScalar]) -> Vec<(usize, CycScalar)> {
        self.expand
            .apply(v)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn piece_dims(&self) -> std::collections::BTreeMap<(u32, Vec<u32>), usize> {
        let mut out = std::collections::BTreeMap::new();
        for v in &self.vectors {
            *out.entry((v.k0, v.kbar.clone())).or_insert(0) += 1;
        }
        out
    }

    pub fn indices_where(&self, pred: impl Fn(&EigenVector) -> bool) -> Vec<usize> {
        (0..self.vectors.len())
            .filter(|&i| pred(&self.vectors[i]))
            .collect()
    }
}

/// Simultaneous eigenbasis of the commuting automorphisms, refined by
/// h(0̄)-weights. Requires `validate_automorphisms` to have passed.
pub fn eigen_decompose(
    alg: &SimpleLieAlgebraData,
    autos: &[FiniteAutomorphism],
) -> Result<EigenDecomposition, AlgebraError> {
    let order = alg.order;
    let n = alg.dim;
    for a in autos {
        if order % a.order != 0 {
            return Err(AlgebraError::BadAutomorphism(format!(
                "field order {order} not divisible by automorphism order {}",
                a.order
            )));
        }
    }
    // h(0̄) = fixed subspace of span(cartan) under every automorphism
    let hdim = alg.cartan.len();
    let mut rows: Vec<Vec<CycScalar>> = Vec::new();
    for a in autos {
        // (A - I) applied to cartan basis vectors, expressed in g coords
        for r in 0..n {
            let mut row = Vec::with_capacity(hdim);
            for &c in &alg.cartan {
                let img = a.matrix.apply(&alg.basis_vec(c));
                let mut e = img[r].clone();
                if r == c {
                    e -= &CycScalar::one(order);
                }
                row.push(e);
            }
            rows.push(row);
        }
    }
    let h0_coeffs = if rows.is_empty() {
        Mat::identity(order, hdim)
            .rows_iter()
            .map(|r| r.to_vec())
            .collect()
    } else {
        Mat::from_rows(order, rows).kernel()
    };
    let h0_basis: Vec<Vec<CycScalar>> = h0_coeffs
        .iter()
        .map(|cf| {
            let mut v = alg.zero_vec();
            for (i, &c) in alg.cartan.iter().enumerate() {
                v[c] = cf[i].clone();
            }
            v
        })
        .collect();
    // weight of basis vector j on the h0 basis
    let h0_weight = |j: usize| -> Vec<CycScalar> {
        h0_coeffs
            .iter()
            .map(|cf| {
                let mut acc = CycScalar::zero(order);
                for (i, c) in cf.iter().enumerate() {
                    if !c.is_zero() {
                        acc += &(c * &alg.weights[j][i]);
                    }
                }
                acc
            })
            .collect()
    };
    // group basis indices by h0-weight (automorphisms preserve these spaces)
    let mut groups: Vec<(Vec<CycScalar>, Vec<usize>)> = Vec::new();
    for j in 0..n {
        let w = h0_weight(j);
        if let Some(g) = groups.iter_mut().find(|(gw, _)| *gw == w) {
            g.1.push(j);
        } else {
            groups.push((w, vec![j]));
        }
    }
    groups.sort_by(|a, b| {
        for (x, y) in a.0.iter().zip(&b.0) {
            let c = x.struct_cmp(y);
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    });
    // enumerate all grading classes
    let m: Vec<u32> = autos.iter().map(|a| a.order).collect();
    let mut classes: Vec<Vec<u32>> = vec![vec![]];
    for &mi in &m {
        classes = classes
            .iter()
            .flat_map(|c| {
                (0..mi).map(move |k| {
                    let mut c = c.clone();
                    c.push(k);
                    c
                })
            })
            .collect();
    }
    let mut vectors: Vec<EigenVector> = Vec::new();
    for class in &classes {
        for (alpha, idxs) in &groups {
            let sub = idxs.len();
            // restriction of σ_i to the weight space; off-space components must vanish
            let mut stacked: Vec<Vec<CycScalar>> = Vec::new();
            for (ai, a) in autos.iter().enumerate() {
                let xi = CycScalar::root_of_unity(
                    order,
                    (order / a.order) as i64 * class[ai] as i64,
                );
                for r in 0..n {
                    let mut row = Vec::with_capacity(sub);
                    for (jj, &j) in idxs.iter().enumerate() {
                        let img = a.matrix.apply(&alg.basis_vec(j));
                        let mut e = img[r].clone();
                        if r == j {
                            e -= &xi;
                        }
                        let _ = jj;
                        row.push(e);
                    }
                    stacked.push(row);
                }
            }
            let ker = Mat::from_rows(order, stacked).kernel();
            for cf in ker {
                let mut coords = alg.zero_vec();
                for (jj, &j) in idxs.iter().enumerate() {
                    coords[j] = cf[jj].clone();
                }
                vectors.push(EigenVector {
                    coords,
                    k0: class[0],
                    kbar: class[1..].to_vec(),
                    alpha: alpha.clone(),
                });
            }
        }
    }
    if vectors.len() != n {
        return Err(AlgebraError::NotDiagonalizable(vectors.len(), n));
    }
    let mut cols = Mat::zero(order, n, n);
    for (c, v) in vectors.iter().enumerate() {
        for r in 0..n {
            *cols.at_mut(r, c) = v.coords[r].clone();
        }
    }
    let expand = cols
        .inverse()
        .ok_or(AlgebraError::NotDiagonalizable(vectors.len(), n))?;
    Ok(EigenDecomposition {
        order,
        m,
        vectors,
        h0_basis,
        expand,
    })
}

/// How to read §2.13(3) for a rank-1 fixed-point root system (B₁ = A₁).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rank1Convention {
    /// decide by matching Δ(g, h(0̄))
    Auto,
    /// always treat A₁ under the B_l clause (double the short roots)
    Doubled,
    /// never double
    Plain,
}

pub struct AssumptionData {
    pub report: Report,
    pub g00_dim: usize,
    pub delta0: Option<RootSystem>,
    /// true when the matching Δ_{0,en} branch doubled the short roots
    pub doubled_branch: bool,
}

/// Checks the three standing assumptions: simplicity of g(0̄,0̄), the Cartan
/// containment h(0̄) ⊆ h, and Δ(g, h(0̄)) = Δ_{0,en}.
pub fn check_assumptions_213(
    alg: &SimpleLieAlgebraData,
    decomp: &EigenDecomposition,
    convention: Rank1Convention,
) -> AssumptionData {
    let order = alg.order;
    let mut rep = Report::new("assumptions-2.13");
    let zero_class = decomp.indices_where(|v| {
        v.k0 == 0 && v.kbar.iter().all(|&k| k == 0)
    });
    let g00: Vec<Vec<CycScalar>> = zero_class
        .iter()
        .map(|&i| decomp.vectors[i].coords.clone())
        .collect();
    let g00_dim = g00.len();

    // clause 1: g(0̄,0̄) simple — derived algebra is everything and each
    // basis vector generates the whole algebra as an ideal
    let clause1 = {
        if g00.is_empty() {
            rep.fail("2.13(1) g(0,0) simple", json!({"reason": "fixed algebra is zero"}));
            false
        } else {
            let mut derived = SpanBuilder::new(order, alg.dim);
            for x in &g00 {
                for y in &g00 {
                    derived.insert(&alg.bracket(x, y));
                }
            }
            let perfect = derived.rank() == g00_dim;
            let mut ideals_ok = true;
            let mut witness = json!(null);
            if perfect {
                for (vi, v) in g00.iter().enumerate() {
                    let mut ideal = SpanBuilder::new(order, alg.dim);
                    ideal.insert(v);
                    loop {
                        let before = ideal.rank();
                        let snapshot: Vec<Vec<CycScalar>> =
                            ideal.basis().to_vec();
                        for b in &snapshot {
                            for y in &g00 {
                                ideal.insert(&alg.bracket(y, b));
                            }
                        }
                        if ideal.rank() == before {
                            break;
                        }
                    }
                    if ideal.rank() != g00_dim {
                        ideals_ok = false;
                        witness = json!({
                            "reason": "proper ideal",
                            "generator_index": vi,
                            "ideal_dim": ideal.rank(),
                            "g00_dim": g00_dim,
                        });
                        break;
                    }
                }
            }
            let ok = perfect && ideals_ok;
            rep.check("2.13(1) g(0,0) simple", ok, || {
                if !perfect {
                    json!({"reason": "not perfect (derived algebra proper)", "g00_dim": g00_dim})
                } else {
                    witness.clone()
                }
            });
            ok
        }
    };

    // clause 2: h(0̄) ⊆ h and h(0̄) Cartan in g(0̄,0̄) (self-centralizing)
    let h0 = &decomp.h0_basis;
    {
        let mut inside = SpanBuilder::new(order, alg.dim);
        for v in &g00 {
            inside.insert(v);
        }
        let contained = h0.iter().all(|h| inside.contains(h));
        // centralizer of h0 inside g00
        let mut centralizer_dim = 0usize;
        if contained && !g00.is_empty() {
            let rows: Vec<Vec<CycScalar>> = (0..alg.dim * h0.len().max(1))
                .map(|ri| {
                    let (hi, r) = (ri / alg.dim, ri % alg.dim);
                    (0..g00.len())
                        .map(|c| {
                            if h0.is_empty() {
                                CycScalar::zero(order)
                            } else {
                                alg.bracket(&h0[hi], &g00[c])[r].clone()
                            }
                        })
                        .collect()
                })
                .collect();
            centralizer_dim = if h0.is_empty() {
                g00.len()
            } else {
                Mat::from_rows(order, rows).kernel().len()
            };
        }
        let ok = contained && !h0.is_empty() && centralizer_dim == h0.len();
        rep.check("2.13(2) h(0) ⊆ h is Cartan in g(0,0)", ok, || {
            json!({
                "h0_dim": h0.len(),
                "h0_inside_g00": contained,
                "centralizer_dim_in_g00": centralizer_dim,
            })
        });
    }

    // clause 3: Δ(g, h(0̄)) = Δ_{0,en}
    let mut delta0_out: Option<RootSystem> = None;
    let mut doubled_branch = false;
    if clause1 && !h0.is_empty() {
        let all_weights: Vec<Vec<CycScalar>> = decomp
            .vectors
            .iter()
            .map(|v| v.alpha.clone())
            .collect();
        let delta_g: Vec<Vec<CycScalar>> = dedup_weights(&all_weights);
        let zero_weights: Vec<Vec<CycScalar>> = decomp
            .vectors
            .iter()
            .filter(|v| v.k0 == 0 && v.kbar.iter().all(|&k| k == 0))
            .map(|v| v.alpha.clone())
            .collect();
        let delta0_all = dedup_weights(&zero_weights);
        let delta0_nonzero: Vec<Vec<CycScalar>> = delta0_all
            .iter()
            .filter(|w| w.iter().any(|c| !c.is_zero()))
            .cloned()
            .collect();
        let rs = RootSystem::new(order, delta0_nonzero, h0, alg);
        let irreducible = rs.is_irreducible();
        let reduced = rs.is_reduced();
        rep.check("2.13(3) Δ₀ irreducible and reduced", irreducible && reduced, || {
            json!({"irreducible": irreducible, "reduced": reduced})
        });
        let branches: Vec<bool> = match convention {
            Rank1Convention::Auto => {
                if rs.rank() == 1 {
                    vec![false, true]
                } else if rs.is_type_b() {
                    vec![true]
                } else {
                    vec![false]
                }
            }
            Rank1Convention::Doubled => vec![true],
            Rank1Convention::Plain => vec![false],
        };
        let mut matched: Option<bool> = None;
        for &doubled in &branches {
            let en = rs.enlarged(doubled);
            if weight_sets_equal(&en, &delta_g) {
                matched = Some(doubled);
                break;
            }
        }
        doubled_branch = matched.unwrap_or(false);
        rep.check("2.13(3) Δ(g, h(0)) = Δ_{0,en}", matched.is_some(), || {
            json!({
                "delta_g_size": delta_g.len(),
                "delta0_size": rs.roots().len(),
                "branches_tried": branches.len(),
            })
        });
        if matched.is_some() {
            rep.pass(format!(
                "2.13(3) branch: {}",
                if doubled_branch { "B_l (short roots doubled)" } else { "plain" }
            ));
        }
        delta0_out = Some(rs);
    }

    AssumptionData {
        report: rep,
        g00_dim,
        delta0: delta0_out,
        doubled_branch,
    }
}

fn dedup_weights(ws: &[Vec<CycScalar>]) -> Vec<Vec<CycScalar>> {
    let mut out: Vec<Vec<CycScalar>> = Vec::new();
    for w in ws {
        if !out.iter().any(|x| x == w) {
            out.push(w.clone());
        }
    }
    out
}

fn weight_sets_equal(a: &[Vec<CycScalar>], b: &[Vec<CycScalar>]) -> bool {
    a.len() == b.len() && a.iter().all(|w| b.contains(w))
}

/// The σ₀-fixed data of §4.2/§5.7: the subalgebra a (σ₀-fixed, centralizing
/// h(0̄)) with its Λ-grading, and g(σ₀) with its triangular split by
/// h(0̄)-weight sign. All entries are indices into the eigenbasis.
pub struct SigmaFixedData {
    pub a_indices: Vec<usize>,
    pub gsigma0_indices: Vec<usize>,
    pub gs0_minus: Vec<usize>,
    pub gs0_zero: Vec<usize>,
    pub gs0_plus: Vec<usize>,
}

pub fn subalgebra_a(decomp: &EigenDecomposition) -> SigmaFixedData {
    let gsigma0_indices = decomp.indices_where(|v| v.k0 == 0);
    let a_indices: Vec<usize> = gsigma0_indices
        .iter()
        .copied()
        .filter(|&i| decomp.vectors[i].alpha.iter().all(|c| c.is_zero()))
        .collect();
    let sign = |i: usize| alpha_lex_sign(&decomp.vectors[i].alpha);
    let gs0_minus = gsigma0_indices.iter().copied().filter(|&i| sign(i) < 0).collect();
    let gs0_zero = gsigma0_indices.iter().copied().filter(|&i| sign(i) == 0).collect();
    let gs0_plus = gsigma0_indices.iter().copied().filter(|&i| sign(i) > 0).collect();
    SigmaFixedData {
        a_indices,
        gsigma0_indices,
        gs0_minus,
        gs0_zero,
        gs0_plus,
    }
}

/// Lexicographic sign of an h(0̄)-weight: the sign of the first nonzero
/// rational coordinate across the weight's scalar entries. Translation
/// invariant, hence a valid root positivity.
pub fn alpha_lex_sign(alpha: &[CycScalar]) -> i32 {
    for c in alpha {
        let s = c.lex_sign();
        if s != 0 {
            return s;
        }
    }
    0
}

/// Test-support oracle: the Killing form κ(x, y) = tr(ad x ∘ ad y).
pub fn killing_form(alg: &SimpleLieAlgebraData, x: &[CycScalar], y: &[CycScalar]) -> CycScalar {
    let mut acc = CycScalar::zero(alg.order());
    for j in 0..alg.dim {
        let v = alg.bracket(y, &alg.basis_vec(j));
        let w = alg.bracket(x, &v);
        acc += &w[j];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chevalley_dimensions_and_dual_coxeter() {
        let a1 = build_chevalley(CartanType::A1, 1);
        assert_eq!(a1.dim, 3);
        assert_eq!(a1.dual_coxeter, 2);
        let a2 = build_chevalley(CartanType::A2, 1);
        assert_eq!(a2.dim, 8);
        let b2 = build_chevalley(CartanType::B2, 1);
        assert_eq!(b2.dim, 10);
    }

    #[test]
    fn killing_form_ratio_cross_checks_dual_coxeter() {
        // κ = 2 h^∨ (·,·) when long roots have squared length 2
        for ty in [CartanType::A1, CartanType::A2, CartanType::B2] {
            let alg = build_chevalley(ty, 1);
            let factor = CycScalar::from_int(1, 2 * alg.dual_coxeter as i64);
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    let k = killing_form(&alg, &alg.basis_vec(i), &alg.basis_vec(j));
                    assert_eq!(k, alg.form.at(i, j) * &factor, "{ty:?} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn chevalley_structure_constants_are_integers() {
        for ty in [CartanType::A1, CartanType::A2, CartanType::B2] {
            let alg = build_chevalley(ty, 1);
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    for (_, c) in alg.bracket_basis(i, j) {
                        let r = c.as_rat().expect("rational");
                        assert!(r.is_integer(), "{ty:?} [{i},{j}] has constant {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_automorphism_validates() {
        let alg = build_chevalley(CartanType::A1, 1);
        let rep = validate_automorphisms(&alg, &[FiniteAutomorphism::identity(1, 3)]);
        assert!(rep.all_passed());
    }

    #[test]
    fn chevalley_involution_validates_but_wrong_order_fails() {
        let alg = build_chevalley(CartanType::A1, 1);
        let rep = validate_automorphisms(&alg, &[sl2_chevalley_involution(1)]);
        assert!(rep.all_passed());
        // identity with claimed order 2 → "order not minimal"
        let bogus = FiniteAutomorphism {
            matrix: Mat::identity(1, 3),
            order: 2,
        };
        let rep = validate_automorphisms(&alg, &[bogus]);
        assert!(!rep.all_passed());
        assert!(rep
            .failures()
            .any(|c| c.clause.contains("order minimal")));
    }

    #[test]
    fn trivial_eigen_decomposition() {
        let alg = build_chevalley(CartanType::A1, 1);
        let autos = vec![
            FiniteAutomorphism::identity(1, 3),
            FiniteAutomorphism::identity(1, 3),
        ];
        let d = eigen_decompose(&alg, &autos).unwrap();
        assert_eq!(d.vectors.len(), 3);
        assert!(d.vectors.iter().all(|v| v.k0 == 0 && v.kbar == vec![0]));
        assert_eq!(d.h0_basis.len(), 1);
    }

    #[test]
    fn sl3_twisted_eigenspace_dims() {
        let (alg, sigma0) = build_sl3_twisted(4);
        let autos = vec![sigma0, FiniteAutomorphism::identity(4, 8)];
        let rep = validate_automorphisms(&alg, &autos);
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let d = eigen_decompose(&alg, &autos).unwrap();
        let dims = d.piece_dims();
        assert_eq!(dims.get(&(0, vec![0])), Some(&3));
        assert_eq!(dims.get(&(1, vec![0])), Some(&5));
        // oracle: averaging projector (1/2)(1 + σ₀) has rank = dim g(0̄)
        let p = autos_projector(&alg, &autos[0]);
        assert_eq!(p.rank(), 3);
    }

    fn autos_projector(alg: &SimpleLieAlgebraData, a: &FiniteAutomorphism) -> Mat {
        let n = alg.dim;
        let half = CycScalar::from_rat(alg.order(), Rat::new(1.into(), 2.into()));
        Mat::identity(alg.order(), n).add(&a.matrix).scale(&half)
    }

    #[test]
    fn sl2_chevalley_involution_fixed_part_is_one_dimensional() {
        let alg = build_chevalley(CartanType::A1, 2);
        let autos = vec![sl2_chevalley_involution(2), FiniteAutomorphism::identity(2, 3)];
        let d = eigen_decompose(&alg, &autos).unwrap();
        let fixed = d.indices_where(|v| v.k0 == 0 && v.kbar == vec![0]);
        assert_eq!(fixed.len(), 1);
        let data = check_assumptions_213(&alg, &d, Rank1Convention::Auto);
        assert!(!data.report.all_passed());
        assert!(data
            .report
            .failures()
            .any(|c| c.clause.contains("2.13(1)")));
    }

    #[test]
    fn sl2_untwisted_assumptions_pass_with_plain_branch() {
        let alg = build_chevalley(CartanType::A1, 1);
        let autos = vec![
            FiniteAutomorphism::identity(1, 3),
            FiniteAutomorphism::identity(1, 3),
        ];
        let d = eigen_decompose(&alg, &autos).unwrap();
        let data = check_assumptions_213(&alg, &d, Rank1Convention::Auto);
        assert!(data.report.all_passed(), "{:?}", data.report.failures().collect::<Vec<_>>());
        assert!(!data.doubled_branch);
    }

    #[test]
    fn sl3_twisted_assumptions_pass_with_doubled_branch() {
        let (alg, sigma0) = build_sl3_twisted(4);
        let autos = vec![sigma0, FiniteAutomorphism::identity(4, 8)];
        let d = eigen_decompose(&alg, &autos).unwrap();
        let data = check_assumptions_213(&alg, &d, Rank1Convention::Auto);
        assert!(data.report.all_passed(), "{:?}", data.report.failures().collect::<Vec<_>>());
        assert!(data.doubled_branch);
        assert_eq!(data.g00_dim, 3);
    }

    #[test]
    fn subalgebra_a_in_both_configurations() {
        // untwisted sl2: a = h
        let alg = build_chevalley(CartanType::A1, 1);
        let autos = vec![FiniteAutomorphism::identity(1, 3)];
        let d = eigen_decompose(&alg, &autos).unwrap();
        let s = subalgebra_a(&d);
        assert_eq!(s.a_indices.len(), 1);
        assert_eq!(s.gsigma0_indices.len(), 3);
        assert_eq!(s.gs0_zero, s.a_indices);
        // twisted sl3: g(σ₀) = so3, a its Cartan
        let (alg, sigma0) = build_sl3_twisted(4);
        let autos = vec![sigma0, FiniteAutomorphism::identity(4, 8)];
        let d = eigen_decompose(&alg, &autos).unwrap();
        let s = subalgebra_a(&d);
        assert_eq!(s.gsigma0_indices.len(), 3);
        assert_eq!(s.a_indices.len(), 1);
        assert_eq!(s.gs0_minus.len(), 1);
        assert_eq!(s.gs0_plus.len(), 1);
    }

    #[test]
    fn eigenpieces_bracket_into_the_right_piece_and_form_pairs_to_zero() {
        let (alg, sigma0) = build_sl3_twisted(4);
        let autos = vec![sigma0, FiniteAutomorphism::identity(4, 8)];
        let d = eigen_decompose(&alg, &autos).unwrap();
        for v in &d.vectors {
            for w in &d.vectors {
                let br = alg.bracket(&v.coords, &w.coords);
                for (t, c) in d.expand(&br) {
                    assert!(!c.is_zero());
                    let tv = &d.vectors[t];
                    assert_eq!(tv.k0, (v.k0 + w.k0) % 2);
                }
                // (x, y) = 0 unless classes sum to zero
                if (v.k0 + w.k0) % 2 != 0 {
                    assert!(alg.pair(&v.coords, &w.coords).is_zero());
                }
            }
        }
        let total: usize = d.piece_dims().values().sum();
        assert_eq!(total, alg.dim);
    }
}

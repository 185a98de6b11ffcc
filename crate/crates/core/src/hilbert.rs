//! Truncated coefficient-space representation of states and of the operators
//! N, Φ, Φ* acting in the orthonormal basis {e_n}.
//!
//! In that basis the three operators have λ-independent matrix elements:
//! N is diagonal with entries 0..M, Φ carries ones on the superdiagonal and
//! Φ* ones on the subdiagonal. All state operations are O(M) shifts; dense
//! matrices exist only for diagnostics and export.

use crate::export::fmt_sig17;
use crate::specfun::WeightParam;
use crate::{real, uint, Complex, Error, Real, Result};

/// Finite coefficient vector of a state in the orthonormal basis, indexed
/// n = 0..=M, together with the weight parameter and the squared norm lost to
/// shifts past the truncation boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffState<T: Real> {
    coeffs: Vec<Complex<T>>,
    lam: WeightParam<T>,
    overflow_mass: T,
}

impl<T: Real> CoeffState<T> {
    pub fn new(coeffs: Vec<Complex<T>>, lam: WeightParam<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("coefficient vector must be nonempty".into()));
        }
        Ok(Self {
            coeffs,
            lam,
            overflow_mass: T::zero(),
        })
    }

    pub(crate) fn with_overflow(
        coeffs: Vec<Complex<T>>,
        lam: WeightParam<T>,
        overflow_mass: T,
    ) -> Self {
        Self {
            coeffs,
            lam,
            overflow_mass,
        }
    }

    /// Basis state e_n on a space truncated at index `m_trunc`.
    pub fn basis_vector(n: usize, m_trunc: usize, lam: WeightParam<T>) -> Result<Self> {
        if n > m_trunc {
            return Err(Error::Domain(format!(
                "basis index {n} exceeds truncation {m_trunc}"
            )));
        }
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); m_trunc + 1];
        coeffs[n] = Complex::new(T::one(), T::zero());
        Ok(Self {
            coeffs,
            lam,
            overflow_mass: T::zero(),
        })
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Truncation index M; the vector holds M + 1 coefficients.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn lam(&self) -> WeightParam<T> {
        self.lam
    }

    pub fn overflow_mass(&self) -> T {
        self.overflow_mass
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Checks |Σ|a_n|² − 1| ≤ tol.
    pub fn ensure_normalized(&self, tol: T) -> Result<()> {
        let dev = (self.norm_sqr() - T::one()).abs();
        if dev > tol {
            return Err(Error::NotNormalized {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// Rescales to unit norm. The overflow record is kept.
    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        let inv = T::one() / n;
        Self {
            coeffs: self.coeffs.iter().map(|c| c * inv).collect(),
            lam: self.lam,
            overflow_mass: self.overflow_mass,
        }
    }

    /// JSON document `{"lambda": .., "M": .., "re": [..], "im": [..]}` with
    /// every number printed to 17 significant digits.
    pub fn to_json(&self) -> String {
        let re: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| fmt_sig17(c.re.to_f64().unwrap_or(f64::NAN)))
            .collect();
        let im: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| fmt_sig17(c.im.to_f64().unwrap_or(f64::NAN)))
            .collect();
        format!(
            "{{\"lambda\":{},\"M\":{},\"re\":[{}],\"im\":[{}]}}",
            fmt_sig17(self.lam.lambda().to_f64().unwrap_or(f64::NAN)),
            self.truncation(),
            re.join(","),
            im.join(",")
        )
    }
}

/// N: coefficient at n becomes n·a_n. Eigenstates are the basis vectors.
pub fn apply_number<T: Real>(s: &CoeffState<T>) -> CoeffState<T> {
    let coeffs = s
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, a)| a * uint::<T>(n))
        .collect();
    CoeffState::with_overflow(coeffs, s.lam, s.overflow_mass)
}

/// Φ: coefficient at n becomes a_{n+1}; the top slot is zeroed. Nothing
/// leaves the space, so the overflow record is unchanged.
pub fn apply_phase<T: Real>(s: &CoeffState<T>) -> CoeffState<T> {
    let m = s.truncation();
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); m + 1];
    coeffs[..m].copy_from_slice(&s.coeffs[1..]);
    CoeffState::with_overflow(coeffs, s.lam, s.overflow_mass)
}

/// Φ*: coefficient at n+1 becomes a_n; |a_M|² is added to the overflow mass
/// of the result, making the truncation loss observable to callers.
pub fn apply_phase_adjoint<T: Real>(s: &CoeffState<T>) -> CoeffState<T> {
    let m = s.truncation();
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); m + 1];
    coeffs[1..].copy_from_slice(&s.coeffs[..m]);
    let lost = s.coeffs[m].norm_sqr();
    CoeffState::with_overflow(coeffs, s.lam, s.overflow_mass + lost)
}

/// Complex inner product, conjugate-linear in the FIRST slot, so that
/// ⟨A⟩ = inner(f, A f).
pub fn inner<T: Real>(s: &CoeffState<T>, t: &CoeffState<T>) -> Result<Complex<T>> {
    if s.coeffs.len() != t.coeffs.len() {
        return Err(Error::DimensionMismatch(format!(
            "truncations differ: {} vs {}",
            s.truncation(),
            t.truncation()
        )));
    }
    if s.lam != t.lam {
        return Err(Error::DimensionMismatch(
            "states live in spaces with different weight parameters".into(),
        ));
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for (a, b) in s.coeffs.iter().zip(t.coeffs.iter()) {
        acc = acc + a.conj() * b;
    }
    Ok(acc)
}

/// Max-norm of ΦN − NΦ − Φ over (M+1)×(M+1) matrices. The truncated shift
/// matrices satisfy the commutation identity entry-by-entry, so the contract
/// is exactly zero.
pub fn commutator_residual<T: Real>(m_trunc: usize) -> T {
    let phi = OperatorMatrix::<T>::phase(m_trunc);
    let num = OperatorMatrix::<T>::number(m_trunc);
    let lhs = phi.mul(&num).sub(&num.mul(&phi)).sub(&phi);
    lhs.max_abs()
}

/// Smallest truncation M with |w|^{M−k}/(M−k)! < 1e−16, floored at M ≥ k+32.
/// The state coefficients decay superexponentially, so this keeps the dropped
/// tail below working precision.
pub fn auto_truncation<T: Real>(w: Complex<T>, k: usize) -> usize {
    let aw = w.norm().to_f64().unwrap_or(0.0);
    let mut m = 32usize;
    if aw > 0.0 {
        let target = 1e-16f64.ln();
        loop {
            let ln_term: f64 = m as f64 * aw.ln() - (1..=m).map(|j| (j as f64).ln()).sum::<f64>();
            if ln_term < target {
                break;
            }
            m += 1;
        }
    }
    k + m.max(32)
}

/// Identity of a dense diagnostic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpLabel {
    Number,
    Phase,
    PhaseAdjoint,
    Custom,
}

/// Dense (M+1)×(M+1) matrix, row-major. Provided for diagnostics and export
/// only; state operations never materialize it.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    entries: Vec<Complex<T>>,
    dim: usize,
    label: OpLabel,
}

impl<T: Real> OperatorMatrix<T> {
    fn zeros(dim: usize, label: OpLabel) -> Self {
        Self {
            entries: vec![Complex::new(T::zero(), T::zero()); dim * dim],
            dim,
            label,
        }
    }

    /// N = diag(0, 1, .., M).
    pub fn number(m_trunc: usize) -> Self {
        let dim = m_trunc + 1;
        let mut m = Self::zeros(dim, OpLabel::Number);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::new(uint::<T>(i), T::zero());
        }
        m
    }

    /// Φ: ones exactly on the superdiagonal.
    pub fn phase(m_trunc: usize) -> Self {
        let dim = m_trunc + 1;
        let mut m = Self::zeros(dim, OpLabel::Phase);
        for i in 0..dim - 1 {
            m.entries[i * dim + i + 1] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Φ*: ones exactly on the subdiagonal; row 0 is identically zero.
    pub fn phase_adjoint(m_trunc: usize) -> Self {
        let dim = m_trunc + 1;
        let mut m = Self::zeros(dim, OpLabel::PhaseAdjoint);
        for i in 1..dim {
            m.entries[i * dim + i - 1] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> OpLabel {
        self.label
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        let dim = self.dim;
        let mut out = Self::zeros(dim, OpLabel::Custom);
        for i in 0..dim {
            for l in 0..dim {
                let a = self.entries[i * dim + l];
                if a == Complex::new(T::zero(), T::zero()) {
                    continue;
                }
                for j in 0..dim {
                    out.entries[i * dim + j] = out.entries[i * dim + j] + a * other.entries[l * dim + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        Self {
            entries,
            dim: self.dim,
            label: OpLabel::Custom,
        }
    }

    /// Largest |entry|, using max(|re|, |im|) so that exact zeros stay exact.
    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, c| {
            acc.max(c.re.abs()).max(c.im.abs())
        })
    }

    /// Apply to a coefficient vector; diagnostic-rate O(M²).
    pub fn apply(&self, s: &CoeffState<T>) -> Result<CoeffState<T>> {
        if s.coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix dim {} vs state length {}",
                self.dim,
                s.coeffs.len()
            )));
        }
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); self.dim];
        for (i, out) in coeffs.iter_mut().enumerate() {
            for j in 0..self.dim {
                *out = *out + self.entries[i * self.dim + j] * s.coeffs[j];
            }
        }
        Ok(CoeffState::with_overflow(coeffs, s.lam, s.overflow_mass))
    }

    /// Same JSON schema as [`CoeffState::to_json`], entries flattened
    /// row-major.
    pub fn to_json(&self, lam: WeightParam<T>) -> String {
        let re: Vec<String> = self
            .entries
            .iter()
            .map(|c| fmt_sig17(c.re.to_f64().unwrap_or(f64::NAN)))
            .collect();
        let im: Vec<String> = self
            .entries
            .iter()
            .map(|c| fmt_sig17(c.im.to_f64().unwrap_or(f64::NAN)))
            .collect();
        format!(
            "{{\"lambda\":{},\"M\":{},\"re\":[{}],\"im\":[{}]}}",
            fmt_sig17(lam.lambda().to_f64().unwrap_or(f64::NAN)),
            self.dim - 1,
            re.join(","),
            im.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn lam2() -> WeightParam<f64> {
        WeightParam::new(2.0).unwrap()
    }

    fn state(coeffs: Vec<C>) -> CoeffState<f64> {
        CoeffState::new(coeffs, lam2()).unwrap()
    }

    #[test]
    fn number_annihilates_vacuum_and_scales_eigenstates() {
        let e0 = CoeffState::basis_vector(0, 8, lam2()).unwrap();
        assert!(apply_number(&e0).coeffs().iter().all(|c| c.norm_sqr() == 0.0));

        let e3 = CoeffState::basis_vector(3, 8, lam2()).unwrap();
        let out = apply_number(&e3);
        assert_eq!(out.coeffs()[3], C::new(3.0, 0.0));
        assert_eq!(out.norm_sqr(), 9.0);
    }

    #[test]
    fn number_is_linear_on_superpositions() {
        let inv = 1.0 / 2.0f64.sqrt();
        let mut v = vec![C::new(0.0, 0.0); 8];
        v[1] = C::new(inv, 0.0);
        v[2] = C::new(inv, 0.0);
        let out = apply_number(&state(v));
        assert_eq!(out.coeffs()[1], C::new(inv, 0.0));
        assert_eq!(out.coeffs()[2], C::new(2.0 * inv, 0.0));
    }

    #[test]
    fn phase_shifts_down_and_annihilates_vacuum() {
        let e0 = CoeffState::basis_vector(0, 6, lam2()).unwrap();
        assert_eq!(apply_phase(&e0).norm_sqr(), 0.0);

        for n in 0..6 {
            let s = CoeffState::basis_vector(n + 1, 6, lam2()).unwrap();
            let want = CoeffState::basis_vector(n, 6, lam2()).unwrap();
            assert_eq!(apply_phase(&s).coeffs(), want.coeffs());
        }

        let s = state(vec![C::new(2.0, 0.0), C::new(0.0, 5.0), C::new(0.0, 0.0)]);
        let out = apply_phase(&s);
        assert_eq!(out.coeffs(), &[C::new(0.0, 5.0), C::new(0.0, 0.0), C::new(0.0, 0.0)]);
    }

    #[test]
    fn phase_adjoint_shifts_up_and_records_overflow() {
        for n in 0..6 {
            let s = CoeffState::basis_vector(n, 6, lam2()).unwrap();
            let out = apply_phase_adjoint(&s);
            let want = CoeffState::basis_vector(n + 1, 6, lam2()).unwrap();
            assert_eq!(out.coeffs(), want.coeffs());
            assert_eq!(out.overflow_mass(), 0.0);
        }
        let top = CoeffState::basis_vector(6, 6, lam2()).unwrap();
        let out = apply_phase_adjoint(&top);
        assert_eq!(out.norm_sqr(), 0.0);
        assert_eq!(out.overflow_mass(), 1.0);
    }

    #[test]
    fn overflow_mass_is_additive_under_composition() {
        let top = CoeffState::basis_vector(3, 3, lam2()).unwrap();
        let once = apply_phase_adjoint(&top);
        let twice = apply_phase_adjoint(&apply_phase_adjoint(&CoeffState::basis_vector(2, 3, lam2()).unwrap()));
        assert_eq!(once.overflow_mass(), 1.0);
        assert_eq!(twice.overflow_mass(), 1.0);
        // shifting an already-empty state keeps the record
        assert_eq!(apply_phase_adjoint(&once).overflow_mass(), 1.0);
    }

    #[test]
    fn phase_after_adjoint_restores_states_below_top() {
        let mut v = vec![C::new(0.0, 0.0); 10];
        v[0] = C::new(0.3, -0.4);
        v[4] = C::new(0.5, 0.2);
        let s = state(v);
        let back = apply_phase(&apply_phase_adjoint(&s));
        assert_eq!(back.coeffs(), s.coeffs());
    }

    #[test]
    fn inner_is_the_orthonormal_pairing() {
        for m in 0..5 {
            for n in 0..5 {
                let em = CoeffState::basis_vector(m, 5, lam2()).unwrap();
                let en = CoeffState::basis_vector(n, 5, lam2()).unwrap();
                let want = if m == n { 1.0 } else { 0.0 };
                assert_eq!(inner(&em, &en).unwrap(), C::new(want, 0.0));
            }
        }
    }

    #[test]
    fn inner_convention_is_conjugate_linear_in_first_slot() {
        // inner(2 e_0, i e_0) = conj(2) * i = 2i.
        let two = state(vec![C::new(2.0, 0.0)]);
        let i_e0 = state(vec![C::new(0.0, 1.0)]);
        assert_eq!(inner(&two, &i_e0).unwrap(), C::new(0.0, 2.0));
    }

    #[test]
    fn inner_rejects_mismatched_spaces() {
        let a = CoeffState::basis_vector(0, 4, lam2()).unwrap();
        let b = CoeffState::basis_vector(0, 5, lam2()).unwrap();
        assert!(inner(&a, &b).is_err());
        let c = CoeffState::basis_vector(0, 4, WeightParam::new(3.0).unwrap()).unwrap();
        assert!(inner(&a, &c).is_err());
    }

    #[test]
    fn commutator_identity_is_exact() {
        assert_eq!(commutator_residual::<f64>(2), 0.0);
        assert_eq!(commutator_residual::<f64>(16), 0.0);
        assert_eq!(commutator_residual::<f32>(16), 0.0f32);
    }

    #[test]
    fn leibniz_rule_holds_on_truncated_matrices() {
        // NΦ = ΦN − Φ, entrywise.
        let m = 12;
        let phi = OperatorMatrix::<f64>::phase(m);
        let num = OperatorMatrix::<f64>::number(m);
        let lhs = num.mul(&phi);
        let rhs = phi.mul(&num).sub(&phi);
        assert_eq!(lhs.sub(&rhs).max_abs(), 0.0);
    }

    #[test]
    fn shift_products_are_truncated_identities() {
        // ΦΦ* = I − P_M and Φ*Φ = I − P_0.
        let m = 9;
        let phi = OperatorMatrix::<f64>::phase(m);
        let adj = OperatorMatrix::<f64>::phase_adjoint(m);
        let pp = phi.mul(&adj);
        let qq = adj.mul(&phi);
        for i in 0..=m {
            for j in 0..=m {
                let want_pp = if i == j && i < m { 1.0 } else { 0.0 };
                let want_qq = if i == j && i > 0 { 1.0 } else { 0.0 };
                assert_eq!(pp.entry(i, j), C::new(want_pp, 0.0));
                assert_eq!(qq.entry(i, j), C::new(want_qq, 0.0));
            }
        }
        // row 0 of Φ* is identically zero
        for j in 0..=m {
            assert_eq!(adj.entry(0, j), C::new(0.0, 0.0));
        }
    }

    #[test]
    fn matrix_apply_matches_shift_ops() {
        let mut v = vec![C::new(0.0, 0.0); 7];
        v[2] = C::new(0.6, 0.1);
        v[6] = C::new(-0.3, 0.7);
        let s = state(v);
        let phi = OperatorMatrix::phase(6);
        assert_eq!(phi.apply(&s).unwrap().coeffs(), apply_phase(&s).coeffs());
        let num = OperatorMatrix::number(6);
        assert_eq!(num.apply(&s).unwrap().coeffs(), apply_number(&s).coeffs());
    }

    #[test]
    fn auto_truncation_floor_and_growth() {
        assert_eq!(auto_truncation(C::new(0.0, 0.0), 0), 32);
        assert_eq!(auto_truncation(C::new(3.0, 0.0), 0), 32);
        assert_eq!(auto_truncation(C::new(2.0, 0.0), 5), 37);
        // |w| = 5 needs a longer tail: 5^m/m! first drops below 1e-16 at m = 36.
        assert_eq!(auto_truncation(C::new(5.0, 0.0), 0), 36);
    }

    #[test]
    fn json_export_schema() {
        let s = state(vec![C::new(1.0, 0.0), C::new(0.0, -0.5)]);
        let doc = s.to_json();
        assert!(doc.starts_with("{\"lambda\":"));
        assert!(doc.contains("\"M\":1"));
        assert!(doc.contains("\"re\":["));
        assert!(doc.contains("\"im\":["));
        let m = OperatorMatrix::<f64>::number(1).to_json(lam2());
        assert!(m.contains("\"M\":1"));
    }

    proptest! {
        #[test]
        fn number_is_hermitian(re in proptest::collection::vec(-1.0f64..1.0, 6), im in proptest::collection::vec(-1.0f64..1.0, 6)) {
            let s = state(re.iter().zip(&im).map(|(&r, &i)| C::new(r, i)).collect());
            let t = state(im.iter().zip(&re).map(|(&r, &i)| C::new(r, -i)).collect());
            let lhs = inner(&apply_number(&s), &t).unwrap();
            let rhs = inner(&s, &apply_number(&t)).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn shift_adjointness(re in proptest::collection::vec(-1.0f64..1.0, 5), im in proptest::collection::vec(-1.0f64..1.0, 5)) {
            // inner(Φ* s, t) = inner(s, Φ t); exact when t has zero top coefficient.
            let s = state(re.iter().zip(&im).map(|(&r, &i)| C::new(r, i)).collect());
            let mut tv: Vec<C> = im.iter().zip(&re).map(|(&r, &i)| C::new(i, r)).collect();
            tv[4] = C::new(0.0, 0.0);
            let t = state(tv);
            let lhs = inner(&apply_phase_adjoint(&s), &t).unwrap();
            let rhs = inner(&s, &apply_phase(&t)).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-14);
        }
    }
}

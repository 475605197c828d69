use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::scalar::{c, cr, Real};

use super::density::DensityOperator;

/// CPTP map in operator-sum form. Kraus operators are square: the map acts
/// on a fixed set of subsystems and returns the same dimensions.
#[derive(Clone, Debug)]
pub struct QuantumChannel<T: Real> {
    kraus: Vec<Mat<T>>,
    input_labels: Vec<String>,
    output_labels: Vec<String>,
}

impl<T: Real> QuantumChannel<T> {
    /// Validates shapes and `Σ K†K = I` within 1e-8.
    pub fn new(kraus: Vec<Mat<T>>, input_labels: Vec<String>, output_labels: Vec<String>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidParameter("channel without Kraus operators".into()))?;
        let d = first.nrows();
        for k in &kraus {
            if k.nrows() != d || k.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: k.nrows().max(k.ncols()) });
            }
        }
        if input_labels.len() != output_labels.len() {
            return Err(Error::InvalidParameter("input and output label lists differ in length".into()));
        }
        let mut sum = Mat::zeros(d, d);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        let deviation = linalg::max_abs_diff(&sum, &linalg::identity(d));
        if deviation > T::tol(1e-8) {
            return Err(Error::NotTracePreserving { deviation: deviation.as_f64() });
        }
        Ok(Self { kraus, input_labels, output_labels })
    }

    /// Channel acting on `labels` with identical input and output names.
    pub fn on(kraus: Vec<Mat<T>>, labels: &[&str]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        Self::new(kraus, labels.clone(), labels)
    }

    pub fn identity(d: usize) -> Self {
        Self { kraus: vec![linalg::identity(d)], input_labels: vec![], output_labels: vec![] }
    }

    pub fn unitary(u: Mat<T>) -> Result<Self> {
        Self::new(vec![u], vec![], vec![])
    }

    /// Mixed-unitary channel `ρ ↦ Σ p_i U_i ρ U_i†`.
    pub fn mixed_unitary(parts: &[(T, Mat<T>)]) -> Result<Self> {
        let kraus = parts.iter().map(|(p, u)| u * cr(p.sqrt())).collect();
        Self::new(kraus, vec![], vec![])
    }

    /// `ρ ↦ Tr[ρ] I/d`, realized by the `d²` Weyl operators.
    pub fn fully_depolarizing(d: usize) -> Self {
        let scale = T::one() / T::lit(d as f64);
        let mut kraus = Vec::with_capacity(d * d);
        for a in 0..d {
            let x = linalg::shift::<T>(d, a);
            for b in 0..d {
                let z = Mat::from_fn(d, d, |i, j| {
                    if i == j {
                        let angle = T::two_pi() * T::lit((b * i) as f64) / T::lit(d as f64);
                        c(angle.cos(), angle.sin())
                    } else {
                        cr(T::zero())
                    }
                });
                kraus.push(&x * z * cr(scale));
            }
        }
        Self { kraus, input_labels: vec![], output_labels: vec![] }
    }

    /// SWAP of two `d`-dimensional subsystems.
    pub fn swap(d: usize) -> Self {
        let mut u = Mat::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                u[(j * d + i, i * d + j)] = cr(T::one());
            }
        }
        Self { kraus: vec![u], input_labels: vec![], output_labels: vec![] }
    }

    /// Replacement channel `X ↦ Tr[X] σ`. Uses `d · rank(σ)` Kraus operators
    /// `√s_j |v_j⟩⟨i|`.
    pub fn replacement(state: &DensityOperator<T>) -> Self {
        let d = state.dim();
        let (values, vectors) = linalg::eigh(state.matrix());
        let cut = T::lit(1e-14);
        let mut kraus = Vec::new();
        for (j, &s) in values.iter().enumerate() {
            if s <= cut {
                continue;
            }
            let v = vectors.column(j).into_owned() * cr(s.sqrt());
            for i in 0..d {
                let mut k = Mat::zeros(d, d);
                k.set_column(i, &v);
                kraus.push(k);
            }
        }
        Self { kraus, input_labels: vec![], output_labels: vec![] }
    }

    /// Sets the labels used when `apply_channel` is called without targets.
    pub fn with_labels(mut self, input: Vec<String>, output: Vec<String>) -> Result<Self> {
        if input.len() != output.len() {
            return Err(Error::InvalidParameter("input and output label lists differ in length".into()));
        }
        self.input_labels = input;
        self.output_labels = output;
        Ok(self)
    }

    pub fn kraus(&self) -> &[Mat<T>] {
        &self.kraus
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    pub fn input_labels(&self) -> &[String] {
        &self.input_labels
    }

    pub fn output_labels(&self) -> &[String] {
        &self.output_labels
    }

    /// Deviation of `Σ K†K` from the identity.
    pub fn trace_preservation_deviation(&self) -> T {
        let d = self.dim();
        let mut sum = Mat::zeros(d, d);
        for k in &self.kraus {
            sum += k.adjoint() * k;
        }
        linalg::max_abs_diff(&sum, &linalg::identity(d))
    }

    /// Applies the map to a bare matrix of matching dimension.
    pub fn map_matrix(&self, rho: &Mat<T>) -> Mat<T> {
        let mut out = Mat::zeros(rho.nrows(), rho.ncols());
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        out
    }
}

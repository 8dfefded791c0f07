//! Matrix sampling, per-sample random streams and eigenvalues.

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Random stream derivation and Gaussian sampler, recorded in result metadata.
pub const RNG_DESCRIPTION: &str = "chacha20 keyed by master seed, stream id = sample index";
pub const GAUSSIAN_SAMPLER: &str = "ziggurat (rand_distr::StandardNormal)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    #[default]
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Entries {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Row-major n×n sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleMatrix {
    pub n: usize,
    pub entries: Entries,
}

impl EnsembleMatrix {
    pub fn kind(&self) -> EnsembleKind {
        match self.entries {
            Entries::Real(_) => EnsembleKind::Real,
            Entries::Complex(_) => EnsembleKind::Complex,
        }
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.n;
        match &self.entries {
            Entries::Real(a) => Complex64::new((0..n).map(|i| a[i * n + i]).sum(), 0.0),
            Entries::Complex(a) => (0..n).map(|i| a[i * n + i]).sum(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        match &self.entries {
            Entries::Real(a) => a.iter().map(|v| v * v).sum::<f64>().sqrt(),
            Entries::Complex(a) => a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt(),
        }
    }

    fn entry(&self, i: usize, j: usize) -> Complex64 {
        match &self.entries {
            Entries::Real(a) => Complex64::new(a[i * self.n + j], 0.0),
            Entries::Complex(a) => a[i * self.n + j],
        }
    }
}

/// The independent stream of sample `index` under `seed`.
pub fn sample_stream(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Real kind: i.i.d. N(0, 1). Complex kind: real and imaginary parts i.i.d. N(0, ½).
pub fn sample_matrix<R: Rng + ?Sized>(kind: EnsembleKind, n: usize, rng: &mut R) -> Result<EnsembleMatrix> {
    if n == 0 {
        return Err(Error::domain("sample_matrix", "n must be at least 1"));
    }
    let len = n * n;
    let entries = match kind {
        EnsembleKind::Real => Entries::Real((0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()),
        EnsembleKind::Complex => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            Entries::Complex(
                (0..len)
                    .map(|_| {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        Complex64::new(s * re, s * im)
                    })
                    .collect(),
            )
        }
    };
    Ok(EnsembleMatrix { n, entries })
}

/// All n eigenvalues. For real matrices the real Schur form makes real
/// eigenvalues exactly real and complex ones exact conjugate pairs.
pub fn eigenvalues(m: &EnsembleMatrix) -> Result<Vec<Complex64>> {
    const OP: &str = "eigenvalues";
    let n = m.n;
    let eigs = match &m.entries {
        Entries::Real(a) => {
            if a.iter().any(|v| !v.is_finite()) {
                return Err(Error::domain(OP, "matrix has non-finite entries"));
            }
            Mat::<f64>::from_fn(n, n, |i, j| a[i * n + j]).eigenvalues()
        }
        Entries::Complex(a) => {
            if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                return Err(Error::domain(OP, "matrix has non-finite entries"));
            }
            Mat::<Complex64>::from_fn(n, n, |i, j| a[i * n + j]).eigenvalues()
        }
    };
    eigs.map_err(|e| Error::numerical(OP, format!("{e:?}")))
}

/// max ‖Mv − λv‖/‖M‖_F over `pairs` eigenpairs picked by `rng`, from a
/// separate eigendecomposition with vectors.
pub fn backward_error<R: Rng + ?Sized>(m: &EnsembleMatrix, pairs: usize, rng: &mut R) -> Result<f64> {
    const OP: &str = "backward_error";
    let n = m.n;
    let (vectors, values) = match &m.entries {
        Entries::Real(a) => {
            let evd = Mat::<f64>::from_fn(n, n, |i, j| a[i * n + j]).eigen();
            let evd = evd.map_err(|e| Error::numerical(OP, format!("{e:?}")))?;
            let values: Vec<Complex64> = (0..n).map(|k| evd.S()[k]).collect();
            (evd.U().to_owned(), values)
        }
        Entries::Complex(a) => {
            let evd = Mat::<Complex64>::from_fn(n, n, |i, j| a[i * n + j]).eigen();
            let evd = evd.map_err(|e| Error::numerical(OP, format!("{e:?}")))?;
            let values: Vec<Complex64> = (0..n).map(|k| evd.S()[k]).collect();
            (evd.U().to_owned(), values)
        }
    };
    let norm = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let k = rng.random_range(0..n);
        let vnorm = (0..n).map(|i| vectors[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        let mut res = 0.0;
        for i in 0..n {
            let mv: Complex64 = (0..n).map(|j| m.entry(i, j) * vectors[(j, k)]).sum();
            res += (mv - values[k] * vectors[(i, k)]).norm_sqr();
        }
        worst = worst.max(res.sqrt() / (vnorm * norm));
    }
    Ok(worst)
}

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gram_schmidt, orthogonalize_exact, Matrix, Rational};
use crate::sphere::PlaneBasis;

/// Mutually orthogonal integer vectors spanning a subspace.
///
/// Scaling a spanning vector does not change the subspace or its projector,
/// so any orthogonal rational spanning set can be stored this way.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerSpan {
    pub vectors: Vec<Vec<i64>>,
    pub norms2: Vec<i64>,
}

impl IntegerSpan {
    pub fn new(vectors: Vec<Vec<i64>>) -> Result<Self> {
        let d = vectors.first().ok_or(Error::Empty("spanning set"))?.len();
        let mut norms2 = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(Error::DimensionMismatch("spanning vectors of unequal length".into()));
            }
            let n = v
                .iter()
                .try_fold(0i64, |acc, &x| x.checked_mul(x).and_then(|sq| acc.checked_add(sq)))
                .ok_or_else(|| Error::InvalidArgument("integer span overflows i64".into()))?;
            if n == 0 {
                return Err(Error::RankDeficient { index: i });
            }
            for (j, w) in vectors[..i].iter().enumerate() {
                if v.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() != 0 {
                    return Err(Error::InvalidArgument(format!("spanning vectors {j} and {i} are not orthogonal")));
                }
            }
            norms2.push(n);
        }
        Ok(IntegerSpan { vectors, norms2 })
    }

    /// Clear denominators of an orthogonal rational spanning set.
    pub fn from_orthogonal_rational(vectors: &[Vec<Rational>]) -> Option<Self> {
        let mut out = Vec::with_capacity(vectors.len());
        for v in vectors {
            let lcm = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x.numer() * &lcm) / x.denom()).collect();
            let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
            if g == num_bigint::BigInt::from(0) {
                return None;
            }
            let reduced: Option<Vec<i64>> = ints.iter().map(|x| (x / &g).to_i64()).collect();
            let reduced = reduced?;
            if reduced.iter().any(|x| x.abs() > 1 << 20) {
                return None;
            }
            out.push(reduced);
        }
        IntegerSpan::new(out).ok()
    }

    pub fn projector(&self) -> Matrix<Rational> {
        let d = self.vectors[0].len();
        let mut p = Matrix::zeros(d, d);
        for (w, &n) in self.vectors.iter().zip(&self.norms2) {
            for i in 0..d {
                if w[i] == 0 {
                    continue;
                }
                for j in 0..d {
                    if w[j] != 0 {
                        p[(i, j)] += &Rational::new(w[i] * w[j], n);
                    }
                }
            }
        }
        p
    }

    pub fn normalized_f64(&self) -> Vec<Vec<f64>> {
        self.vectors
            .iter()
            .zip(&self.norms2)
            .map(|(w, &n)| {
                let s = (n as f64).sqrt();
                w.iter().map(|&x| x as f64 / s).collect()
            })
            .collect()
    }
}

/// A `k`-dimensional subspace of `R^d`.
///
/// Always carries an orthonormal float basis. Subspaces with rational
/// projectors also carry the exact projector, and an integer orthogonal
/// spanning set when one is known.
#[derive(Debug, Clone)]
pub struct Subspace {
    d: usize,
    k: usize,
    basis: Matrix<f64>,
    projector: Option<Matrix<Rational>>,
    span: Option<IntegerSpan>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        if self.d != other.d || self.k != other.k {
            return false;
        }
        match (&self.projector, &other.projector) {
            (Some(p), Some(q)) => p == q,
            _ => self.float_projector().max_abs_diff(&other.float_projector()) < 1e-10,
        }
    }
}

impl Subspace {
    /// From arbitrary linearly independent float vectors.
    pub fn from_float_vectors(vectors: &[Vec<f64>]) -> Result<Self> {
        let basis = gram_schmidt(vectors)?;
        Ok(Subspace { d: basis.rows(), k: basis.cols(), basis, projector: None, span: None })
    }

    /// From an orthonormal float basis (columns of `basis`).
    pub fn from_orthonormal_basis(basis: Matrix<f64>) -> Result<Self> {
        let g = basis.transpose().matmul(&basis)?;
        if g.max_abs_diff(&Matrix::identity(basis.cols())) > 1e-12 {
            return Err(Error::InvalidArgument("basis columns are not orthonormal".into()));
        }
        Ok(Subspace { d: basis.rows(), k: basis.cols(), basis, projector: None, span: None })
    }

    /// From rational spanning vectors; the projector is exact.
    pub fn from_rational_vectors(vectors: &[Vec<Rational>]) -> Result<Self> {
        let orth = orthogonalize_exact(vectors)?;
        let projector = Matrix::projector_from_orthogonal(&orth)?;
        let span = IntegerSpan::from_orthogonal_rational(&orth);
        let float_vectors: Vec<Vec<f64>> = match &span {
            Some(s) => s.normalized_f64(),
            None => orth
                .iter()
                .map(|w| {
                    let f: Vec<f64> = w.iter().map(Rational::to_f64).collect();
                    let n = f.iter().map(|x| x * x).sum::<f64>().sqrt();
                    f.into_iter().map(|x| x / n).collect()
                })
                .collect(),
        };
        let basis = Matrix::from_columns(&float_vectors)?;
        Ok(Subspace { d: basis.rows(), k: basis.cols(), basis, projector: Some(projector), span })
    }

    /// From mutually orthogonal integer vectors.
    pub fn from_integer_span(span: IntegerSpan) -> Result<Self> {
        let basis = Matrix::from_columns(&span.normalized_f64())?;
        Ok(Subspace { d: basis.rows(), k: basis.cols(), basis, projector: Some(span.projector()), span: Some(span) })
    }

    /// From an orthonormal basis together with an exact projector, checking
    /// `P = Pᵀ`, `P² = P`, `tr P = k` exactly and `P ≈ QQᵀ` to 1e-10.
    pub fn with_projector(basis: Matrix<f64>, projector: Matrix<Rational>) -> Result<Self> {
        let mut s = Subspace::from_orthonormal_basis(basis)?;
        if projector.rows() != s.d || projector.cols() != s.d {
            return Err(Error::DimensionMismatch("projector shape".into()));
        }
        if !projector.is_symmetric() {
            return Err(Error::InvalidArgument("projector is not symmetric".into()));
        }
        if projector.matmul(&projector)? != projector {
            return Err(Error::InvalidArgument("projector is not idempotent".into()));
        }
        if projector.trace() != Rational::from(s.k) {
            return Err(Error::InvalidArgument("projector trace differs from k".into()));
        }
        if projector.to_f64().max_abs_diff(&s.float_projector()) > 1e-10 {
            return Err(Error::InvalidArgument("projector disagrees with basis".into()));
        }
        s.projector = Some(projector);
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &Matrix<f64> {
        &self.basis
    }

    pub fn projector(&self) -> Option<&Matrix<Rational>> {
        self.projector.as_ref()
    }

    pub fn integer_span(&self) -> Option<&IntegerSpan> {
        self.span.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.projector.is_some()
    }

    pub fn float_projector(&self) -> Matrix<f64> {
        match &self.projector {
            Some(p) => p.to_f64(),
            None => self.basis.matmul(&self.basis.transpose()).expect("square"),
        }
    }

    /// `(u, v)` from the first two basis columns, for polygon placement.
    pub fn plane_basis(&self) -> Result<PlaneBasis> {
        if self.k != 2 {
            return Err(Error::Unsupported(format!("plane basis of a {}-dimensional subspace", self.k)));
        }
        PlaneBasis::new(self.basis.column(0), self.basis.column(1))
    }

    /// Orthogonal complement (exact when the projector is exact).
    pub fn orthogonal_complement(&self) -> Result<Subspace> {
        if self.k >= self.d {
            return Err(Error::InvalidArgument("complement of the whole space".into()));
        }
        match &self.projector {
            Some(p) => {
                let comp = Matrix::<Rational>::identity(self.d).sub(p)?;
                let rows: Vec<Vec<Rational>> = comp.to_rows();
                let mut picked: Vec<Vec<Rational>> = Vec::new();
                for r in rows {
                    let mut trial = picked.clone();
                    trial.push(r);
                    if orthogonalize_exact(&trial).is_ok() {
                        picked = trial;
                    }
                    if picked.len() == self.d - self.k {
                        break;
                    }
                }
                Subspace::from_rational_vectors(&picked)
            }
            None => {
                let comp = Matrix::<f64>::identity(self.d).sub(&self.float_projector())?;
                let mut picked: Vec<Vec<f64>> = Vec::new();
                for r in comp.to_rows() {
                    let mut trial = picked.clone();
                    trial.push(r);
                    if gram_schmidt(&trial).is_ok() {
                        picked = trial;
                    }
                    if picked.len() == self.d - self.k {
                        break;
                    }
                }
                Subspace::from_float_vectors(&picked)
            }
        }
    }

    /// `V ↦ gV` for an exact orthogonal map `g` (e.g. a signed permutation).
    pub fn transform_exact(&self, g: &Matrix<Rational>) -> Result<Subspace> {
        let gen: Vec<Vec<Rational>> = match &self.span {
            Some(span) => span.vectors.iter().map(|w| w.iter().map(|&x| Rational::from(x)).collect()).collect(),
            None => {
                let p = self
                    .projector
                    .as_ref()
                    .ok_or_else(|| Error::InvalidArgument("exact transform of a float subspace".into()))?;
                (0..self.d).map(|j| p.column(j)).collect()
            }
        };
        let moved: Vec<Vec<Rational>> =
            gen.iter().map(|w| (0..self.d).map(|i| (0..self.d).map(|j| &g[(i, j)] * &w[j]).sum()).collect()).collect();
        let mut picked: Vec<Vec<Rational>> = Vec::new();
        for v in moved {
            let mut trial = picked.clone();
            trial.push(v);
            if orthogonalize_exact(&trial).is_ok() {
                picked = trial;
            }
        }
        Subspace::from_rational_vectors(&picked)
    }

    /// `V ↦ gV` for a float orthogonal map.
    pub fn transform_float(&self, g: &Matrix<f64>) -> Result<Subspace> {
        let moved = g.matmul(&self.basis)?;
        let cols: Vec<Vec<f64>> = (0..self.k).map(|j| moved.column(j)).collect();
        Subspace::from_float_vectors(&cols)
    }
}

/// JSON form: `{"d", "k", "basis": [[...]] (d rows), "projector": optional exact matrix}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub d: usize,
    pub k: usize,
    pub basis: Matrix<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projector: Option<Matrix<Rational>>,
}

impl From<&Subspace> for SubspaceJson {
    fn from(s: &Subspace) -> Self {
        SubspaceJson { d: s.d, k: s.k, basis: s.basis.clone(), projector: s.projector.clone() }
    }
}

impl TryFrom<SubspaceJson> for Subspace {
    type Error = Error;

    fn try_from(j: SubspaceJson) -> Result<Self> {
        if j.basis.rows() != j.d || j.basis.cols() != j.k {
            return Err(Error::DimensionMismatch(format!(
                "basis is {}x{}, expected {}x{}",
                j.basis.rows(),
                j.basis.cols(),
                j.d,
                j.k
            )));
        }
        match j.projector {
            Some(p) => {
                let mut s = Subspace::with_projector(j.basis, p)?;
                // Recover an integer span from the projector's columns when possible.
                if let Ok(exact) = s.projector.as_ref().map(|p| exact_span_of(p, s.k)).transpose() {
                    s.span = exact.flatten();
                }
                Ok(s)
            }
            None => Subspace::from_orthonormal_basis(j.basis),
        }
    }
}

fn exact_span_of(p: &Matrix<Rational>, k: usize) -> Result<Option<IntegerSpan>> {
    let mut picked: Vec<Vec<Rational>> = Vec::new();
    for j in 0..p.cols() {
        let mut trial = picked.clone();
        trial.push(p.column(j));
        if orthogonalize_exact(&trial).is_ok() {
            picked = trial;
        }
        if picked.len() == k {
            break;
        }
    }
    let orth = orthogonalize_exact(&picked)?;
    Ok(IntegerSpan::from_orthogonal_rational(&orth))
}

/// `e_i` in `R^d` as integers.
pub fn unit_int(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// Coordinate subspace spanned by `e_i`, `i ∈ indices`.
pub fn coordinate_subspace(d: usize, indices: &[usize]) -> Subspace {
    let span = IntegerSpan::new(indices.iter().map(|&i| unit_int(d, i)).collect()).expect("coordinate span");
    Subspace::from_integer_span(span).expect("coordinate subspace")
}

use num_rational::BigRational;

use crate::diagrams::ChordDiagram;
use crate::families::Family;
use crate::oracle::{family_basis, ChordTensor, OracleError};
use crate::polycount::{invert_dense, trace_product, SpanSolver, SparseMatrix};

use super::RelationError;

/// A basis of the full matrix algebra: the independent members of the
/// `x` and `ξ` lists, taken greedily in that order.
pub fn ambient_basis(family: Family, n: usize) -> Vec<SparseMatrix> {
    let b = family_basis(family, n);
    let all: Vec<SparseMatrix> = b
        .pairs
        .iter()
        .map(|p| p.x.clone())
        .chain(b.pairs.iter().map(|p| p.xi.clone()))
        .collect();
    let solver = SpanSolver::new(&all.iter().map(SparseMatrix::flatten).collect::<Vec<_>>());
    solver.independent().iter().map(|&i| all[i].clone()).collect()
}

/// The chord element `Σ_ab (G⁻¹)_ab y_a ⊗ y_b` for a basis `y` with Gram
/// matrix `G_ab = tr(y_a y_b)`, written as pairs `(dual, y_a)`.
pub fn casimir_tensor(dim: usize, basis: &[SparseMatrix]) -> Result<ChordTensor, RelationError> {
    let gram: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| trace_product(a, b)).collect())
        .collect();
    let inv = invert_dense(&gram).ok_or(RelationError::SingularGram)?;
    let pairs: Vec<(SparseMatrix, SparseMatrix)> = basis
        .iter()
        .enumerate()
        .map(|(a, ya)| {
            let mut dual = SparseMatrix::zero(dim);
            for (b, yb) in basis.iter().enumerate() {
                dual = &dual + &yb.scale(&inv[a][b]);
            }
            (dual, ya.clone())
        })
        .collect();
    Ok(ChordTensor::new(dim, &pairs)?)
}

/// Unoriented weight system of the full algebra with the trace form.
pub fn casimir_eval(c: &ChordDiagram, family: Family, n: usize) -> Result<BigRational, RelationError> {
    if n == 0 {
        return Err(OracleError::SizeTooSmall(0).into());
    }
    let basis = ambient_basis(family, n);
    casimir_eval_with_basis(c, family.matrix_dim(n), &basis)
}

/// Same as [`casimir_eval`] for an arbitrary basis of the algebra.
pub fn casimir_eval_with_basis(
    c: &ChordDiagram,
    dim: usize,
    basis: &[SparseMatrix],
) -> Result<BigRational, RelationError> {
    // the chord element is symmetric, so any orientation will do
    Ok(casimir_tensor(dim, basis)?.contract(&c.orient_first_to_second())?)
}

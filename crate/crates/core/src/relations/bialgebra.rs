use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::families::Family;
use crate::oracle::{structure_constants, StructureConstants};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub identity: &'static str,
    pub passed: bool,
    /// First index tuple at which the identity fails, in scan order.
    pub first_failure: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BialgebraReport {
    pub family: Family,
    pub n: usize,
    pub results: Vec<IdentityResult>,
}

impl BialgebraReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

/// First tuple in `0..m` (lexicographic, length `arity`) where `bad` holds.
fn first_bad(m: usize, arity: u32, bad: impl Fn(&[usize]) -> bool + Sync) -> Option<Vec<usize>> {
    let total = m.pow(arity);
    (0..total)
        .into_par_iter()
        .map(|code| {
            let mut idx = vec![0; arity as usize];
            let mut c = code;
            for slot in idx.iter_mut().rev() {
                *slot = c % m;
                c /= m;
            }
            idx
        })
        .find_first(|idx| bad(idx))
}

fn result(identity: &'static str, failure: Option<Vec<usize>>) -> IdentityResult {
    IdentityResult {
        identity,
        passed: failure.is_none(),
        first_failure: failure,
    }
}

/// Antisymmetry, Jacobi, coJacobi and the cocycle condition.
pub fn check_structure_constants(sc: &StructureConstants) -> Vec<IdentityResult> {
    let m = sc.size();
    let c = |i, j, k| sc.c(i, j, k);
    let g = |j, k, i| sc.gamma(j, k, i);

    let as_c = first_bad(m, 3, |t| *c(t[0], t[1], t[2]) != -c(t[1], t[0], t[2]));
    let as_g = first_bad(m, 3, |t| *g(t[0], t[1], t[2]) != -g(t[1], t[0], t[2]));

    // Σ_m c^m_ij c^l_mk + cyclic in (i, j, k)
    let jacobi = first_bad(m, 4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let mut s = BigRational::zero();
        for a in 0..m {
            for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                let p = c(x, y, a);
                if !p.is_zero() {
                    s += p * c(a, z, l);
                }
            }
        }
        !s.is_zero()
    });

    // Σ_m γ^ij_m γ^mk_l + cyclic in (i, j, k)
    let cojacobi = first_bad(m, 4, |t| {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let mut s = BigRational::zero();
        for a in 0..m {
            for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                let p = g(x, y, a);
                if !p.is_zero() {
                    s += p * g(a, z, l);
                }
            }
        }
        !s.is_zero()
    });

    // δ[e_i, e_j] = ad_{e_i} δ(e_j) - ad_{e_j} δ(e_i), in components (l, m)
    let cocycle = first_bad(m, 4, |t| {
        let (i, j, l, mm) = (t[0], t[1], t[2], t[3]);
        let mut lhs = BigRational::zero();
        let mut rhs = BigRational::zero();
        for a in 0..m {
            let cij = c(i, j, a);
            if !cij.is_zero() {
                lhs += cij * g(l, mm, a);
            }
            rhs += c(i, a, l) * g(a, mm, j) + c(i, a, mm) * g(l, a, j)
                - c(j, a, l) * g(a, mm, i)
                - c(j, a, mm) * g(l, a, i);
        }
        lhs != rhs
    });

    vec![
        result("antisymmetry-bracket", as_c),
        result("antisymmetry-cobracket", as_g),
        result("jacobi", jacobi),
        result("cojacobi", cojacobi),
        result("cocycle", cocycle),
    ]
}

/// Builds the structure constants and checks every identity. A basis whose
/// brackets leave their span is reported as a failed `closure` entry.
pub fn check_bialgebra_identities(family: Family, n: usize) -> BialgebraReport {
    let results = match structure_constants(family, n) {
        Ok(sc) => {
            let mut r = vec![result("closure", None)];
            r.extend(check_structure_constants(&sc));
            r
        }
        Err(crate::oracle::OracleError::NotClosed { i, j, .. }) => {
            vec![result("closure", Some(vec![i, j]))]
        }
        Err(e) => panic!("structure constants unavailable: {e}"),
    };
    BialgebraReport { family, n, results }
}

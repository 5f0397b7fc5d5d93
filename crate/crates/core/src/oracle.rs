//! Brute-force ground truth: explicit matrix bases at a concrete `N` and an
//! exact contraction of diagrams by sweeping the circle once.
//!
//! Every arrow carries `Σ_a ξ^a ⊗ x_a`, with `ξ^a` at its tail and `x_a` at its
//! head. A diagram's value is the sum over basis assignments of the trace of
//! the endpoint matrices multiplied in circle order (a later endpoint
//! multiplies on the left).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::diagrams::{LegDir, OrientedChordDiagram, Role, VertexDiagram, VertexKind, VertexToken};
use crate::families::Family;
use crate::polycount::{poly_from_samples, InterpolationError, PolynomialQ, SpanSolver, SparseMatrix};

/// Most arrows a single contraction accepts.
pub const MAX_ORACLE_ARROWS: usize = 6;

const OPEN_SLOTS: usize = MAX_ORACLE_ARROWS + 2;
const CLOSED: u16 = u16::MAX;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} arrows exceeds the oracle limit of {max}")]
    TooManyArrows { n: usize, max: usize },
    #[error("size N = {0} is too small (need N >= 1)")]
    SizeTooSmall(usize),
    #[error("exact integer contraction overflowed")]
    Overflow,
    #[error("bracket of basis elements {i} and {j} leaves the {side} span")]
    NotClosed { side: &'static str, i: usize, j: usize },
    #[error("vertex leg {0} is missing from the word")]
    MissingLeg(usize),
    #[error(transparent)]
    Interpolation(#[from] InterpolationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPair {
    pub x: SparseMatrix,
    pub xi: SparseMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBasis {
    pub family: Family,
    pub n: usize,
    pub dim: usize,
    pub pairs: Vec<BasisPair>,
}

impl FamilyBasis {
    /// `Σ_a tr(x_a ξ^a)`.
    pub fn pairing_sum(&self) -> BigRational {
        self.pairs
            .iter()
            .map(|p| crate::polycount::trace_product(&p.x, &p.xi))
            .sum()
    }
}

/// The explicit basis pairs `(x_a, ξ^a)` at size `n`, ordered by block type,
/// then `i`, then `j`. Elements that vanish identically are dropped.
pub fn family_basis(family: Family, n: usize) -> FamilyBasis {
    let dim = family.matrix_dim(n);
    let half = BigRational::new(1.into(), 2.into());
    let e = |i: usize, j: usize| SparseMatrix::unit(dim, i - 1, j - 1);
    let lin = |terms: &[(BigRational, SparseMatrix)]| {
        let mut m = SparseMatrix::zero(dim);
        for (c, t) in terms {
            m = &m + &t.scale(c);
        }
        m
    };
    let one = BigRational::one;
    let pow_half = |k: usize| (0..k).fold(BigRational::one(), |a, _| a * &half);
    let mut pairs = Vec::new();

    if family == Family::Gl {
        for i in 1..=n {
            for j in i..=n {
                pairs.push(BasisPair {
                    x: e(i, j),
                    xi: e(j, i).scale(&pow_half(usize::from(i == j))),
                });
            }
        }
        return FamilyBasis { family, n, dim, pairs };
    }

    let s = usize::from(family == Family::SoOdd);
    if family == Family::SoOdd {
        for i in 1..=n {
            pairs.push(BasisPair {
                x: lin(&[(one(), e(1, i + 1)), (-one(), e(i + n + 1, 1))]),
                xi: lin(&[(half.clone(), e(i + 1, 1)), (-half.clone(), e(1, i + n + 1))]),
            });
        }
    }
    for i in 1..=n {
        for j in i..=n {
            let c = pow_half(usize::from(i == j) + 1);
            pairs.push(BasisPair {
                x: lin(&[(one(), e(i + s, j + s)), (-one(), e(j + n + s, i + n + s))]),
                xi: lin(&[(c.clone(), e(j + s, i + s)), (-c, e(i + n + s, j + n + s))]),
            });
        }
    }
    let sign = if family == Family::Sp { one() } else { -one() };
    for i in 1..=n {
        for j in i..=n {
            let c = pow_half(usize::from(i == j) + 1);
            let x = lin(&[(one(), e(i + s, j + n + s)), (sign.clone(), e(j + s, i + n + s))]);
            let xi = lin(&[(c.clone(), e(j + n + s, i + s)), (&sign * &c, e(i + n + s, j + s))]);
            if !x.is_zero() {
                pairs.push(BasisPair { x, xi });
            }
        }
    }
    FamilyBasis { family, n, dim, pairs }
}

/// Integer matrix stored by column: `cols[c]` lists `(row, value)`.
#[derive(Clone, Debug)]
struct IntMat {
    cols: Vec<Vec<(u16, i128)>>,
}

fn common_scale<'a>(mats: impl IntoIterator<Item = &'a SparseMatrix>) -> BigInt {
    let mut l = BigInt::one();
    for m in mats {
        for (_, _, v) in m.nonzeros() {
            l = l.lcm(v.denom());
        }
    }
    l
}

fn to_int(m: &SparseMatrix, scale: &BigInt) -> Result<IntMat, OracleError> {
    let mut cols = vec![Vec::new(); m.dim()];
    for (i, j, v) in m.nonzeros() {
        let scaled = (v * BigRational::from_integer(scale.clone())).to_integer();
        let x = scaled.to_i128().ok_or(OracleError::Overflow)?;
        cols[j].push((i as u16, x));
    }
    Ok(IntMat { cols })
}

/// An element `Σ_a L_a ⊗ R_a` placed on every arrow: `L_a` at the tail and
/// `R_a` at the head, prepared for exact integer contraction.
#[derive(Clone, Debug)]
pub struct ChordTensor {
    dim: usize,
    tails: Vec<IntMat>,
    heads: Vec<IntMat>,
    tail_scale: BigInt,
    head_scale: BigInt,
    /// `[column] -> (index, row, value)` for opening an arrow on either side
    tail_by_col: Vec<Vec<(u16, u16, i128)>>,
    head_by_col: Vec<Vec<(u16, u16, i128)>>,
}

/// One position on the circle for a general contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    /// Arrow endpoint; arrows are numbered from 0.
    Tail(usize),
    Head(usize),
    /// A fixed matrix from the caller's list.
    Fixed(usize),
}

impl ChordTensor {
    pub fn new(dim: usize, pairs: &[(SparseMatrix, SparseMatrix)]) -> Result<Self, OracleError> {
        assert!(pairs.len() < CLOSED as usize && dim < CLOSED as usize);
        let tail_scale = common_scale(pairs.iter().map(|p| &p.0));
        let head_scale = common_scale(pairs.iter().map(|p| &p.1));
        let tails = pairs.iter().map(|p| to_int(&p.0, &tail_scale)).collect::<Result<Vec<_>, _>>()?;
        let heads = pairs.iter().map(|p| to_int(&p.1, &head_scale)).collect::<Result<Vec<_>, _>>()?;
        let by_col = |mats: &[IntMat]| {
            let mut out = vec![Vec::new(); dim];
            for (a, m) in mats.iter().enumerate() {
                for (c, col) in m.cols.iter().enumerate() {
                    for &(r, v) in col {
                        out[c].push((a as u16, r, v));
                    }
                }
            }
            out
        };
        Ok(Self {
            dim,
            tail_by_col: by_col(&tails),
            head_by_col: by_col(&heads),
            tails,
            heads,
            tail_scale,
            head_scale,
        })
    }

    /// The oracle's arrow element `Σ_a ξ^a ⊗ x_a`.
    pub fn from_basis(basis: &FamilyBasis) -> Result<Self, OracleError> {
        let pairs: Vec<_> = basis.pairs.iter().map(|p| (p.xi.clone(), p.x.clone())).collect();
        Self::new(basis.dim, &pairs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contract(&self, diagram: &OrientedChordDiagram) -> Result<BigRational, OracleError> {
        let sites: Vec<Site> = diagram
            .word()
            .iter()
            .map(|ep| match ep.role {
                Role::Tail => Site::Tail(ep.arrow - 1),
                Role::Head => Site::Head(ep.arrow - 1),
            })
            .collect();
        self.contract_sites(&sites, &[])
    }

    /// Contracts a circle whose sites are arrow endpoints (each arrow exactly
    /// once as tail and once as head) or fixed matrices.
    pub fn contract_sites(&self, sites: &[Site], fixed: &[SparseMatrix]) -> Result<BigRational, OracleError> {
        let arrows = sites
            .iter()
            .filter_map(|s| match s {
                Site::Tail(a) => Some(a + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        if arrows > OPEN_SLOTS {
            return Err(OracleError::TooManyArrows { n: arrows, max: OPEN_SLOTS });
        }
        let fixed_scales: Vec<BigInt> = fixed.iter().map(|m| common_scale([m])).collect();
        let fixed_int = fixed
            .iter()
            .zip(&fixed_scales)
            .map(|(m, s)| to_int(m, s))
            .collect::<Result<Vec<_>, _>>()?;

        let sites = rotate_for_width(sites);
        let total = (0..self.dim)
            .into_par_iter()
            .map(|start| self.sweep_from(start, &sites, &fixed_int))
            .try_reduce(|| 0i128, |a, b| a.checked_add(b).ok_or(OracleError::Overflow))?;

        let mut denom = BigInt::one();
        for s in &sites {
            denom *= match s {
                Site::Tail(_) => &self.tail_scale,
                Site::Head(_) => &self.head_scale,
                Site::Fixed(k) => &fixed_scales[*k],
            };
        }
        Ok(BigRational::new(BigInt::from(total), denom))
    }

    fn sweep_from(&self, start: usize, sites: &[Site], fixed: &[IntMat]) -> Result<i128, OracleError> {
        type Key = (u16, [u16; OPEN_SLOTS]);
        let mut state: HashMap<Key, i128> = HashMap::new();
        state.insert((start as u16, [CLOSED; OPEN_SLOTS]), 1);
        let mut opened = [false; OPEN_SLOTS];
        for site in sites {
            let mut next: HashMap<Key, i128> = HashMap::with_capacity(state.len());
            let mut push = |k: Key, v: i128| -> Result<(), OracleError> {
                let slot = next.entry(k).or_insert(0);
                *slot = slot.checked_add(v).ok_or(OracleError::Overflow)?;
                Ok(())
            };
            match *site {
                Site::Fixed(k) => {
                    for ((cur, open), val) in state {
                        for &(row, x) in &fixed[k].cols[cur as usize] {
                            push((row, open), val.checked_mul(x).ok_or(OracleError::Overflow)?)?;
                        }
                    }
                }
                Site::Tail(r) | Site::Head(r) => {
                    let is_tail = matches!(site, Site::Tail(_));
                    if !opened[r] {
                        opened[r] = true;
                        let by_col = if is_tail { &self.tail_by_col } else { &self.head_by_col };
                        for ((cur, open), val) in state {
                            for &(a, row, x) in &by_col[cur as usize] {
                                let mut o = open;
                                o[r] = a;
                                push((row, o), val.checked_mul(x).ok_or(OracleError::Overflow)?)?;
                            }
                        }
                    } else {
                        let mats = if is_tail { &self.tails } else { &self.heads };
                        for ((cur, mut open), val) in state {
                            let a = open[r] as usize;
                            open[r] = CLOSED;
                            for &(row, x) in &mats[a].cols[cur as usize] {
                                push((row, open), val.checked_mul(x).ok_or(OracleError::Overflow)?)?;
                            }
                        }
                    }
                }
            }
            state = next;
        }
        state
            .into_iter()
            .filter(|((cur, _), _)| *cur as usize == start)
            .try_fold(0i128, |a, (_, v)| a.checked_add(v).ok_or(OracleError::Overflow))
    }
}

/// Rotation of the circle with the fewest simultaneously open arrows.
fn rotate_for_width(sites: &[Site]) -> Vec<Site> {
    let width = |rot: &[Site]| {
        let mut open = [false; OPEN_SLOTS];
        let (mut cur, mut max) = (0usize, 0usize);
        for s in rot {
            if let Site::Tail(a) | Site::Head(a) = *s {
                if open[a] {
                    cur -= 1;
                } else {
                    open[a] = true;
                    cur += 1;
                    max = max.max(cur);
                }
            }
        }
        max
    };
    (0..sites.len().max(1))
        .map(|k| {
            let mut v = sites[k.min(sites.len())..].to_vec();
            v.extend_from_slice(&sites[..k.min(sites.len())]);
            v
        })
        .min_by_key(|v| width(v))
        .unwrap_or_default()
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n == 0 {
        Err(OracleError::SizeTooSmall(n))
    } else {
        Ok(())
    }
}

/// Exact value of the weight system at size `n` by direct contraction.
pub fn oracle_eval(diagram: &OrientedChordDiagram, family: Family, n: usize) -> Result<BigRational, OracleError> {
    check_size(n)?;
    if diagram.n() > MAX_ORACLE_ARROWS {
        return Err(OracleError::TooManyArrows { n: diagram.n(), max: MAX_ORACLE_ARROWS });
    }
    ChordTensor::from_basis(&family_basis(family, n))?.contract(diagram)
}

/// Interpolates `oracle_eval` at `N = 1..=n+2` (degree at most `n+1`) and
/// confirms the result at `N = n+3`.
pub fn oracle_poly(diagram: &OrientedChordDiagram, family: Family) -> Result<PolynomialQ, OracleError> {
    let n = diagram.n();
    let points = (1..=n + 3)
        .into_par_iter()
        .map(|size| Ok((size as i64, oracle_eval(diagram, family, size)?)))
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(poly_from_samples(&points, n + 1)?)
}

/// `Σ_a ξ^a[β][α] · x_a[ν][μ]`, keyed by 0-based `[α, β, μ, ν]`; zero entries
/// are omitted.
pub fn one_arrow_tensor(family: Family, n: usize) -> BTreeMap<[usize; 4], BigRational> {
    let mut out: BTreeMap<[usize; 4], BigRational> = BTreeMap::new();
    for p in family_basis(family, n).pairs {
        for (beta, alpha, a) in p.xi.nonzeros() {
            for (nu, mu, b) in p.x.nonzeros() {
                *out.entry([alpha, beta, mu, nu]).or_insert_with(BigRational::zero) += a * b;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `[x_i, x_j] = c^k_ij x_k` and `[ξ^j, ξ^k] = γ^jk_i ξ^i`, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub family: Family,
    pub n: usize,
    size: usize,
    c: Vec<BigRational>,
    gamma: Vec<BigRational>,
}

impl StructureConstants {
    pub fn size(&self) -> usize {
        self.size
    }

    fn at(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.size + b) * self.size + c
    }

    /// `c^k_ij`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.c[self.at(i, j, k)]
    }

    /// `γ^jk_i`.
    pub fn gamma(&self, j: usize, k: usize, i: usize) -> &BigRational {
        &self.gamma[self.at(j, k, i)]
    }

    pub fn set_c(&mut self, i: usize, j: usize, k: usize, v: BigRational) {
        let at = self.at(i, j, k);
        self.c[at] = v;
    }

    pub fn set_gamma(&mut self, j: usize, k: usize, i: usize, v: BigRational) {
        let at = self.at(j, k, i);
        self.gamma[at] = v;
    }
}

fn bracket_table(
    mats: &[SparseMatrix],
    side: &'static str,
) -> Result<Vec<BigRational>, OracleError> {
    let m = mats.len();
    let solver = SpanSolver::new(&mats.iter().map(SparseMatrix::flatten).collect::<Vec<_>>());
    let mut out = vec![BigRational::zero(); m * m * m];
    for i in 0..m {
        for j in 0..m {
            let br = mats[i].commutator(&mats[j]);
            if br.is_zero() {
                continue;
            }
            let coeffs = solver.solve(&br.flatten()).ok_or(OracleError::NotClosed { side, i, j })?;
            for (k, v) in coeffs.into_iter().enumerate() {
                out[(i * m + j) * m + k] = v;
            }
        }
    }
    Ok(out)
}

pub fn structure_constants(family: Family, n: usize) -> Result<StructureConstants, OracleError> {
    check_size(n)?;
    let basis = family_basis(family, n);
    let xs: Vec<_> = basis.pairs.iter().map(|p| p.x.clone()).collect();
    let xis: Vec<_> = basis.pairs.iter().map(|p| p.xi.clone()).collect();
    Ok(StructureConstants {
        family,
        n,
        size: xs.len(),
        c: bracket_table(&xs, "x")?,
        gamma: bracket_table(&xis, "xi")?,
    })
}

/// Value of a one-vertex diagram. A bracket vertex with legs read cyclically
/// as (in, in, out) contributes `c^k_ij`; a cobracket vertex read as
/// (in, out, out) contributes `γ^jk_i`. An in-leg puts `ξ` on the circle, an
/// out-leg puts `x`.
pub fn vertex_eval(vd: &VertexDiagram, family: Family, n: usize) -> Result<BigRational, OracleError> {
    check_size(n)?;
    if vd.arrow_count() > MAX_ORACLE_ARROWS {
        return Err(OracleError::TooManyArrows { n: vd.arrow_count(), max: MAX_ORACLE_ARROWS });
    }
    let basis = family_basis(family, n);
    let sc = structure_constants(family, n)?;
    let tensor = ChordTensor::from_basis(&basis)?;
    let legs = vd.legs();
    let m = sc.size();
    let dim = basis.dim;

    // rotate so the odd leg (out for a bracket, in for a cobracket) is in place
    let (odd_dir, odd_last) = match vd.kind() {
        VertexKind::Bracket => (LegDir::Out, true),
        VertexKind::Cobracket => (LegDir::In, false),
    };
    let odd = (0..3).find(|&l| legs[l] == odd_dir).expect("validated vertex");
    let order: [usize; 3] = if odd_last {
        [(odd + 1) % 3, (odd + 2) % 3, odd]
    } else {
        [odd, (odd + 1) % 3, (odd + 2) % 3]
    };
    // fixed slot of each leg in the circle word
    let mut leg_slot = [usize::MAX; 3];
    for (pos, l) in order.iter().enumerate() {
        leg_slot[*l] = pos;
    }
    let sites: Vec<Site> = vd
        .word()
        .iter()
        .map(|t| match t {
            VertexToken::Arrow(ep) => match ep.role {
                Role::Tail => Site::Tail(ep.arrow - 1),
                Role::Head => Site::Head(ep.arrow - 1),
            },
            VertexToken::Leg(l) => Site::Fixed(leg_slot[*l]),
        })
        .collect();
    for l in 0..3 {
        if !vd.word().contains(&VertexToken::Leg(l)) {
            return Err(OracleError::MissingLeg(l));
        }
    }

    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect();
    let terms = pairs
        .into_par_iter()
        .map(|(a, b)| -> Result<BigRational, OracleError> {
            let fixed = match vd.kind() {
                VertexKind::Bracket => {
                    // Σ_k c^k_ab x_k on the out-leg
                    let mut out = SparseMatrix::zero(dim);
                    for k in 0..m {
                        let c = sc.c(a, b, k);
                        if !c.is_zero() {
                            out = &out + &basis.pairs[k].x.scale(c);
                        }
                    }
                    if out.is_zero() {
                        return Ok(BigRational::zero());
                    }
                    vec![basis.pairs[a].xi.clone(), basis.pairs[b].xi.clone(), out]
                }
                VertexKind::Cobracket => {
                    let mut inn = SparseMatrix::zero(dim);
                    for i in 0..m {
                        let g = sc.gamma(a, b, i);
                        if !g.is_zero() {
                            inn = &inn + &basis.pairs[i].xi.scale(g);
                        }
                    }
                    if inn.is_zero() {
                        return Ok(BigRational::zero());
                    }
                    vec![inn, basis.pairs[a].x.clone(), basis.pairs[b].x.clone()]
                }
            };
            tensor.contract_sites(&sites, &fixed)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(terms.into_iter().sum())
}

/// `true` when every entry of `m` is a dyadic rational; the explicit bases
/// only ever use halves and quarters.
pub fn is_dyadic(m: &SparseMatrix) -> bool {
    m.nonzeros().all(|(_, _, v)| {
        let d = v.denom();
        d.is_positive() && (d & (d - BigInt::one())).is_zero()
    })
}

use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use super::{
    average, casimir_eval, check_bialgebra_identities, check_relation, check_stu, four_t_instances,
    six_t_instances, stu_instances, CheckRecord, Mode, SizeTag, Status,
};
use crate::diagrams::{enumerate_oriented, enumerate_unoriented};
use crate::families::{evaluate_weight, Family};
use crate::oracle::{oracle_eval, oracle_poly};
use crate::polycount::fmt_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    SixT,
    FourT,
    Stu,
    Bialgebra,
    Averaging,
    OracleMatch,
    All,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unknown suite `{0}` (expected 6t, 4t, stu, bialgebra, averaging, oracle-match or all)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "6t" => Suite::SixT,
            "4t" => Suite::FourT,
            "stu" => Suite::Stu,
            "bialgebra" => Suite::Bialgebra,
            "averaging" => Suite::Averaging,
            "oracle-match" => Suite::OracleMatch,
            "all" => Suite::All,
            other => return Err(UnknownSuite(other.to_string())),
        })
    }
}

impl Suite {
    const EACH: [Suite; 6] = [
        Suite::SixT,
        Suite::FourT,
        Suite::Stu,
        Suite::Bialgebra,
        Suite::Averaging,
        Suite::OracleMatch,
    ];

    fn default_sizes(self) -> RangeInclusive<usize> {
        match self {
            Suite::Averaging => 1..=4,
            _ => 2..=3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Largest arrow/chord count for enumerated diagrams (default 3).
    pub max_arrows: Option<usize>,
    /// Sizes `N` for numeric checks (suite-specific default).
    pub n_range: Option<RangeInclusive<usize>>,
}

fn failed(check: String, family: Family, n: SizeTag, why: impl ToString) -> CheckRecord {
    CheckRecord {
        check,
        family,
        n,
        status: Status::Fail,
        residual: why.to_string(),
    }
}

type Job = Box<dyn Fn() -> CheckRecord + Send + Sync>;

fn jobs_for(suite: Suite, opts: &SuiteOptions) -> Vec<Job> {
    let max_arrows = opts.max_arrows.unwrap_or(3);
    let sizes: Vec<usize> = opts.n_range.clone().unwrap_or_else(|| suite.default_sizes()).collect();
    let mut jobs: Vec<Job> = Vec::new();
    match suite {
        Suite::All => {
            for s in Suite::EACH {
                jobs.extend(jobs_for(s, opts));
            }
        }
        Suite::SixT => {
            let mut insts = six_t_instances(0);
            if max_arrows >= 3 {
                insts.extend(six_t_instances(1));
            }
            for r in insts {
                for f in Family::ALL {
                    let r = r.clone();
                    jobs.push(Box::new(move || {
                        check_relation(&r, f, Mode::Polynomial)
                            .unwrap_or_else(|e| failed(r.name.clone(), f, SizeTag::Poly, e))
                    }));
                }
            }
        }
        Suite::FourT => {
            for r in four_t_instances() {
                for f in Family::ALL {
                    let modes = std::iter::once(Mode::Polynomial).chain(sizes.iter().map(|&n| Mode::Numeric(n)));
                    for mode in modes {
                        let r = r.clone();
                        jobs.push(Box::new(move || {
                            let mut rec = check_relation(&r, f, mode).unwrap_or_else(|e| {
                                failed(r.name.clone(), f, super::size_tag(mode), e)
                            });
                            if mode == Mode::Polynomial {
                                rec.check = format!("{}/averaged", rec.check);
                            }
                            rec
                        }));
                    }
                }
            }
        }
        Suite::Stu => {
            for (vd, diff) in stu_instances() {
                for f in Family::ALL {
                    for &n in &sizes {
                        let (vd, diff) = (vd.clone(), diff.clone());
                        jobs.push(Box::new(move || {
                            check_stu(&vd, &diff, f, n)
                                .unwrap_or_else(|e| failed(diff.name.clone(), f, SizeTag::At(n), e))
                        }));
                    }
                }
            }
        }
        Suite::Bialgebra => {
            for f in Family::ALL {
                for &n in &sizes {
                    jobs.push(Box::new(move || {
                        let report = check_bialgebra_identities(f, n);
                        let bad: Vec<String> = report
                            .results
                            .iter()
                            .filter(|r| !r.passed)
                            .map(|r| format!("{} at {:?}", r.identity, r.first_failure.clone().unwrap_or_default()))
                            .collect();
                        CheckRecord {
                            check: "bialgebra".into(),
                            family: f,
                            n: SizeTag::At(n),
                            status: if bad.is_empty() { Status::Pass } else { Status::Fail },
                            residual: if bad.is_empty() { "0".into() } else { bad.join("; ") },
                        }
                    }));
                }
            }
        }
        Suite::Averaging => {
            for k in 0..=max_arrows {
                for c in enumerate_unoriented(k).unwrap_or_default() {
                    for f in Family::ALL {
                        for &n in &sizes {
                            let c = c.clone();
                            jobs.push(Box::new(move || {
                                let name = format!("averaging[{c}]");
                                let run = || -> Result<CheckRecord, super::RelationError> {
                                    let mut total = num_rational::BigRational::from_integer(0.into());
                                    for o in average(&c).terms {
                                        total += oracle_eval(&o, f, n)?;
                                    }
                                    let diff = total - casimir_eval(&c, f, n)?;
                                    Ok(CheckRecord {
                                        check: name.clone(),
                                        family: f,
                                        n: SizeTag::At(n),
                                        status: if diff == num_rational::BigRational::from_integer(0.into()) {
                                            Status::Pass
                                        } else {
                                            Status::Fail
                                        },
                                        residual: fmt_rational(&diff),
                                    })
                                };
                                run().unwrap_or_else(|e| failed(name.clone(), f, SizeTag::At(n), e))
                            }));
                        }
                    }
                }
            }
        }
        Suite::OracleMatch => {
            for k in 0..=max_arrows {
                for d in enumerate_oriented(k).unwrap_or_default() {
                    for f in Family::ALL {
                        let d = d.clone();
                        jobs.push(Box::new(move || {
                            let name = format!("oracle-match[{d}]");
                            match oracle_poly(&d, f) {
                                Ok(p) => {
                                    let diff = &evaluate_weight(f, &d) - &p;
                                    CheckRecord {
                                        check: name,
                                        family: f,
                                        n: SizeTag::Poly,
                                        status: if diff.is_zero() { Status::Pass } else { Status::Fail },
                                        residual: diff.to_string(),
                                    }
                                }
                                Err(e) => failed(name, f, SizeTag::Poly, e),
                            }
                        }));
                    }
                }
            }
        }
    }
    jobs
}

/// Runs a suite; records come back in a fixed order regardless of threads.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Vec<CheckRecord> {
    jobs_for(suite, opts).par_iter().map(|job| job()).collect()
}

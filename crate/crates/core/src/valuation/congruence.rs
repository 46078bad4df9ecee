//! Brute-force checks of power-sum congruences modulo prime powers: additivity
//! over blocks of length `p^d`, and the value of `S_k(m) mod p^d` read off from
//! the trailing base-`p` digits of `m`.

use serde::Serialize;

use crate::primes::{is_prime, pow_mod};

/// `m = q p^d + r (p^d - 1)/(p - 1)`: the low `d` base-`p` digits of `m` all
/// equal `r = m mod p`, and `q mod p != r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub q: u64,
    pub r: u64,
    pub d: u32,
}

pub fn decompose(m: u64, p: u64) -> Decomposition {
    assert!(m >= 1 && p >= 2);
    let r = m % p;
    let (mut q, mut d) = (m, 0);
    loop {
        q = (q - r) / p;
        d += 1;
        if q == 0 || q % p != r {
            break;
        }
    }
    Decomposition { q, r, d }
}

/// Which statement of the residue formulas to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CongruenceForm {
    /// Formulas exactly as commonly quoted: `-p^(d-1)` for `m = 0 (p)`, and
    /// the half-residue formula for every `k`.
    Printed,
    /// `-p^(d-1) q` for `m = 0 (p)`, and the half-residue formula only for even `k`.
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CongruenceCheck {
    Additivity,
    Decomposition,
    ZeroResidue,
    MinusOneResidue,
    HalfResidue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceCounterexample {
    pub check: CongruenceCheck,
    pub p: u64,
    pub k: u32,
    pub m: u64,
    /// `p^d`
    pub modulus: u64,
    pub expected: u64,
    pub actual: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Copy)]
pub struct CongruenceGrid {
    /// Largest `d` for additivity modulo `p^d`.
    pub d_max: u32,
    pub k_max: u32,
    /// Largest `m` for the residue formulas, and for `m1`, `m2` in additivity.
    pub m_max: u64,
    /// Multipliers `q` in `S_k(q m1 + m2)`.
    pub q_max: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CongruenceReport {
    pub checked: std::collections::BTreeMap<String, u64>,
    pub counterexamples: Vec<CongruenceCounterexample>,
}

impl CongruenceReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn tick(&mut self, check: CongruenceCheck) {
        *self.checked.entry(format!("{check:?}")).or_default() += 1;
    }
}

fn s_mod(k: u32, m: u64, modulus: u64) -> u64 {
    (1..=m).fold(0, |acc, j| (acc + pow_mod(j, k as u64, modulus)) % modulus)
}

fn neg_mod(a: u64, modulus: u64) -> u64 {
    (modulus - a % modulus) % modulus
}

/// Exhaustive check over `grid` for the odd prime `p`. Returns all failures.
pub fn verify_congruence_forms(
    p: u64,
    grid: &CongruenceGrid,
    form: CongruenceForm,
) -> CongruenceReport {
    assert!(p > 2 && is_prime(p), "p must be an odd prime");
    let mut report = CongruenceReport::default();

    for d in 1..=grid.d_max {
        let modulus = p.pow(d);
        let blocks: Vec<u64> = (0..).map(|i| i * modulus).take_while(|&m| m <= grid.m_max).collect();
        let top = grid.q_max * grid.m_max + grid.m_max;
        for k in 1..=grid.k_max {
            let mut prefix = Vec::with_capacity(top as usize + 1);
            prefix.push(0u64);
            for j in 1..=top {
                let last = *prefix.last().unwrap();
                prefix.push((last + pow_mod(j, k as u64, modulus)) % modulus);
            }
            for q in 1..=grid.q_max {
                for &m1 in &blocks {
                    for &m2 in &blocks {
                        report.tick(CongruenceCheck::Additivity);
                        let actual = prefix[(q * m1 + m2) as usize];
                        let expected = (q % modulus * prefix[m1 as usize] + prefix[m2 as usize]) % modulus;
                        if actual != expected {
                            report.counterexamples.push(CongruenceCounterexample {
                                check: CongruenceCheck::Additivity,
                                p,
                                k,
                                m: q * m1 + m2,
                                modulus,
                                expected,
                                actual,
                                detail: format!("q={q} m1={m1} m2={m2}"),
                            });
                        }
                    }
                }
            }
        }
    }

    for m in 1..=grid.m_max {
        let Decomposition { q, r, d } = decompose(m, p);
        let modulus = p.pow(d);
        report.tick(CongruenceCheck::Decomposition);
        if d == 0 || q % p == r || q * modulus + r * (modulus - 1) / (p - 1) != m {
            report.counterexamples.push(CongruenceCounterexample {
                check: CongruenceCheck::Decomposition,
                p,
                k: 0,
                m,
                modulus,
                expected: m,
                actual: q * modulus + r * (modulus - 1) / (p - 1),
                detail: format!("q={q} r={r} d={d}"),
            });
            continue;
        }
        let lead = p.pow(d - 1);
        let check = match r {
            0 => CongruenceCheck::ZeroResidue,
            _ if r == p - 1 => CongruenceCheck::MinusOneResidue,
            _ if r == (p - 1) / 2 => CongruenceCheck::HalfResidue,
            _ => continue,
        };
        for k in 1..=grid.k_max {
            let divisible = k as u64 % (p - 1) == 0;
            if check == CongruenceCheck::HalfResidue && form == CongruenceForm::Corrected && k % 2 == 1 {
                continue;
            }
            let expected = if !divisible {
                0
            } else {
                match check {
                    CongruenceCheck::ZeroResidue if form == CongruenceForm::Printed => neg_mod(lead, modulus),
                    CongruenceCheck::ZeroResidue => neg_mod(lead * (q % modulus) % modulus, modulus),
                    CongruenceCheck::MinusOneResidue => neg_mod(lead * ((q + 1) % modulus) % modulus, modulus),
                    _ => {
                        // 1/2 mod p^d is (p^d + 1)/2
                        let half = modulus.div_ceil(2);
                        neg_mod(lead * ((q + half) % modulus) % modulus, modulus)
                    }
                }
            };
            report.tick(check);
            let actual = s_mod(k, m, modulus);
            if actual != expected {
                report.counterexamples.push(CongruenceCounterexample {
                    check,
                    p,
                    k,
                    m,
                    modulus,
                    expected,
                    actual,
                    detail: format!("q={q} r={r} d={d}"),
                });
            }
        }
    }
    report
}

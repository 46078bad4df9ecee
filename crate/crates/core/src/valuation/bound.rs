use serde::Serialize;

use super::{v2, v3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n_max")]
pub enum BoundKind {
    UpperBound(u32),
    NoSolutionForNGe2,
    NotCovered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundOutcome {
    pub kind: BoundKind,
    pub case_label: &'static str,
}

/// Upper bound on `n` in `T_k(x) = y^n` from the first applicable branch,
/// 2-adic branches before 3-adic ones.
///
/// Each branch applies only where the valuation is known to be positive, so
/// `y` shares the prime and `n <= v_p(T_k(x))`.
pub fn exponent_bound(x: u64, k: u32) -> BoundOutcome {
    outcome(exponent_bounds(x, k).into_iter().next())
}

/// Minimum over every applicable branch. Can be strictly smaller than
/// [`exponent_bound`], e.g. `(9, 4)` where the 3-adic row gives 1.
pub fn sharpest_exponent_bound(x: u64, k: u32) -> BoundOutcome {
    outcome(exponent_bounds(x, k).into_iter().min_by_key(|(n, _)| *n))
}

/// All applicable `(bound, case label)` pairs, 2-adic first.
pub fn exponent_bounds(x: u64, k: u32) -> Vec<(u32, &'static str)> {
    assert!(x >= 1 && k >= 1, "exponent_bound needs x, k >= 1");
    [two_adic(x as u128, k), three_adic(x as u128, k)].into_iter().flatten().collect()
}

/// The 2-adic branch alone. For `k >= 4` it depends only on the parity of `k`,
/// so its value at `k = 4` or `k = 5` bounds `n` for a whole parity class.
pub fn two_adic_exponent_bound(x: u64, k: u32) -> Option<(u32, &'static str)> {
    assert!(x >= 1 && k >= 1, "exponent_bound needs x, k >= 1");
    two_adic(x as u128, k)
}

fn outcome(best: Option<(u32, &'static str)>) -> BoundOutcome {
    match best {
        None => BoundOutcome { kind: BoundKind::NotCovered, case_label: "no branch applies" },
        Some((n, label)) if n <= 1 => {
            BoundOutcome { kind: BoundKind::NoSolutionForNGe2, case_label: label }
        }
        Some((n, label)) => BoundOutcome { kind: BoundKind::UpperBound(n), case_label: label },
    }
}

fn two_adic(x: u128, k: u32) -> Option<(u32, &'static str)> {
    let odd_k = k % 2 == 1;
    if x % 4 == 0 {
        let t = v2(x);
        return Some(if k == 1 || !odd_k {
            (t - 1, "x=0 (4), k=1 or k even: v2(x)-1")
        } else {
            (2 * t - 2, "x=0 (4), k>=3 odd: 2v2(x)-2")
        });
    }
    if k == 1 {
        return (x % 4 == 1).then(|| (v2(3 * x + 1) - 1, "x=1 (4), k=1: v2(3x+1)-1"));
    }
    if !(x % 8 == 1 || x % 8 == 5) || x % 32 == 1 {
        return None;
    }
    Some(match (x % 8, k) {
        (5, _) if odd_k => (v2(3 * x + 1), "x=5 (8), k>=3 odd: v2(3x+1)"),
        (5, _) => (1, "x=5 (8), k even: 1"),
        (_, 2) => (v2(7 * x + 1) - 1, "x=1 (8), k=2: v2(7x+1)-1"),
        (_, 3) => (v2(5 * x + 3) + v2(3 * x + 1) - 2, "x=1 (8), k=3: v2((5x+3)(3x+1))-2"),
        _ if x % 16 == 9 && odd_k => (3, "x=9 (16), k>=5 odd: 3"),
        _ if x % 16 == 9 => (2, "x=9 (16), k>=4 even: 2"),
        _ if odd_k => (4, "x=17 (32), k>=5 odd: 4"),
        _ => (3, "x=17 (32), k>=4 even: 3"),
    })
}

fn three_adic(x: u128, k: u32) -> Option<(u32, &'static str)> {
    let odd_k = k % 2 == 1;
    match (x % 9, k) {
        (r, 1) if r % 3 == 0 => Some((v3(x), "x=0 (3), k=1: v3(x)")),
        (r, 3) if r % 3 == 0 => Some((2 * v3(x) + v3(5 * x + 3), "x=0 (3), k=3: v3(x^2(5x+3))")),
        (r, _) if r % 3 == 0 && odd_k => {
            Some((v3(k as u128) + 2 * v3(x), "x=0 (3), k>3 odd: v3(kx^2)"))
        }
        (0, _) => Some((v3(x) - 1, "x=0 (9), k even: v3(x)-1")),
        (4, _) if !odd_k => Some((v3(2 * x + 1) - 1, "x=4 (9), k even: v3(2x+1)-1")),
        _ => None,
    }
}

use serde::Serialize;

use super::{v2, v3};

pub const NOT_COVERED: &str = "not covered";

/// Closed-form valuation, or `None` where no formula is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValuationPrediction {
    pub value: Option<u32>,
    pub case_label: &'static str,
}

impl ValuationPrediction {
    fn at(value: u32, case_label: &'static str) -> Self {
        Self { value: Some(value), case_label }
    }

    fn uncovered(case_label: &'static str) -> Self {
        Self { value: None, case_label }
    }

    pub fn covered(&self) -> bool {
        self.value.is_some()
    }
}

/// `v_2(T_k(x))`.
///
/// Even `x` is handled by the `x = 2^t q` formula. Odd `x` dispatches on
/// `k = 1`, then `x mod 8`, then the `k = 2, 3` rows for `x = 1 (8)`, then
/// `x mod 16` and `x mod 32`. Nothing is claimed for `x = 1 (32)` with `k >= 4`.
pub fn predict_v2_t(x: u64, k: u32) -> ValuationPrediction {
    assert!(x >= 1 && k >= 1, "predict_v2_t needs x, k >= 1");
    let x = x as u128;
    if x % 2 == 0 {
        let t = v2(x);
        return if k == 1 || k % 2 == 0 {
            ValuationPrediction::at(t - 1, "x even, k=1 or k even: v2(x)-1")
        } else {
            ValuationPrediction::at(2 * t - 2, "x even, k>=3 odd: 2v2(x)-2")
        };
    }
    if k == 1 {
        return ValuationPrediction::at(v2(3 * x + 1) - 1, "x odd, k=1: v2(3x+1)-1");
    }
    let odd_k = k % 2 == 1;
    match x % 8 {
        3 | 7 => ValuationPrediction::at(0, "x=3,7 (8), k>=2: 0"),
        5 if odd_k => ValuationPrediction::at(v2(3 * x + 1), "x=5 (8), k>=3 odd: v2(3x+1)"),
        5 => ValuationPrediction::at(1, "x=5 (8), k even: 1"),
        _ if k == 2 => ValuationPrediction::at(v2(7 * x + 1) - 1, "x=1 (8), k=2: v2(7x+1)-1"),
        _ if k == 3 => ValuationPrediction::at(
            v2(5 * x + 3) + v2(3 * x + 1) - 2,
            "x=1 (8), k=3: v2((5x+3)(3x+1))-2",
        ),
        _ if x % 16 == 9 => {
            if odd_k {
                ValuationPrediction::at(3, "x=9 (16), k>=5 odd: 3")
            } else {
                ValuationPrediction::at(2, "x=9 (16), k>=4 even: 2")
            }
        }
        _ if x % 32 == 17 => {
            if odd_k {
                ValuationPrediction::at(4, "x=17 (32), k>=5 odd: 4")
            } else {
                ValuationPrediction::at(3, "x=17 (32), k>=4 even: 3")
            }
        }
        _ => ValuationPrediction::uncovered(NOT_COVERED),
    }
}

/// `v_3(T_k(x))`. Nothing is claimed for `x = 5 (9)` with `k` even.
pub fn predict_v3_t(x: u64, k: u32) -> ValuationPrediction {
    assert!(x >= 1 && k >= 1, "predict_v3_t needs x, k >= 1");
    let x = x as u128;
    let odd_k = k % 2 == 1;
    if k == 1 {
        return ValuationPrediction::at(v3(x), "k=1: v3(x)");
    }
    if x % 3 == 0 {
        return if !odd_k {
            ValuationPrediction::at(v3(x) - 1, "x=0 (3), k even: v3(x)-1")
        } else if k == 3 {
            ValuationPrediction::at(2 * v3(x) + v3(5 * x + 3), "x=0 (3), k=3: v3(x^2(5x+3))")
        } else {
            ValuationPrediction::at(v3(k as u128) + 2 * v3(x), "x=0 (3), k>3 odd: v3(kx^2)")
        };
    }
    if odd_k {
        return ValuationPrediction::at(0, "x=1,2 (3), k>=3 odd: 0");
    }
    match x % 9 {
        2 | 8 => ValuationPrediction::at(0, "x=2,8 (9), k even: 0"),
        1 | 4 | 7 => ValuationPrediction::at(v3(2 * x + 1) - 1, "x=1 (3), k even: v3(2x+1)-1"),
        _ => ValuationPrediction::uncovered(NOT_COVERED),
    }
}

/// `v_3(S_k(x))`; every `(x, k)` is covered.
pub fn predict_v3_s(x: u64, k: u32) -> ValuationPrediction {
    assert!(x >= 1 && k >= 1, "predict_v3_s needs x, k >= 1");
    let x = x as u128;
    if k == 1 {
        return ValuationPrediction::at(v3(x) + v3(x + 1), "k=1: v3(x(x+1))");
    }
    if k % 2 == 0 {
        return ValuationPrediction::at(
            v3(x) + v3(x + 1) + v3(2 * x + 1) - 1,
            "k even: v3(x(x+1)(2x+1))-1",
        );
    }
    if x % 3 == 1 {
        ValuationPrediction::at(0, "x=1 (3), k>=3 odd: 0")
    } else {
        ValuationPrediction::at(
            v3(k as u128) + 2 * v3(x) + 2 * v3(x + 1) - 1,
            "x=0,2 (3), k>=3 odd: v3(kx^2(x+1)^2)-1",
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v2_examples() {
        assert_eq!(predict_v2_t(8, 5).value, Some(4));
        assert_eq!(predict_v2_t(13, 7).value, Some(3));
        assert_eq!(predict_v2_t(3, 6).value, Some(0));
        let open = predict_v2_t(33, 4);
        assert!(!open.covered());
        assert_eq!(open.case_label, NOT_COVERED);
        assert_eq!(predict_v2_t(9, 4).value, Some(2));
        // k = 2, 3 rows still apply at x = 1 (32)
        assert!(predict_v2_t(33, 2).covered());
        assert!(predict_v2_t(33, 3).covered());
    }

    #[test]
    fn v3_examples() {
        assert_eq!(predict_v3_t(3, 1).value, Some(1));
        assert_eq!(predict_v3_t(4, 2).value, Some(1));
        assert_eq!(predict_v3_t(2, 4).value, Some(0));
        assert!(!predict_v3_t(5, 2).covered());
        assert!(predict_v3_t(5, 3).covered());
    }

    #[test]
    fn v3_s_examples() {
        assert_eq!(predict_v3_s(3, 1).value, Some(1));
        assert_eq!(predict_v3_s(1, 3).value, Some(0));
        // S_2(2) = 5
        assert_eq!(predict_v3_s(2, 2).value, Some(0));
    }

    #[test]
    fn huge_x_does_not_overflow() {
        let x = u64::MAX - 2; // odd, 5 (mod 8)
        assert!(predict_v2_t(x, 3).covered());
        assert!(predict_v3_t(u64::MAX, 3).covered());
        assert!(predict_v3_s(u64::MAX, 5).covered());
    }
}

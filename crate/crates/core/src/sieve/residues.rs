use crate::primes::{gcd, pow_mod};

/// `a` is an n-th power modulo the prime `p` (0 counts).
pub fn is_nth_power_residue(a: u64, p: u64, n: u64) -> bool {
    let a = a % p;
    a == 0 || pow_mod(a, (p - 1) / gcd(n, p - 1), p) == 1
}

/// `{ a^n mod p : 0 <= a < p }`, sorted.
pub fn nth_power_residues(p: u64, n: u64) -> Vec<u64> {
    let mut seen = vec![false; p as usize];
    for a in 0..p {
        seen[pow_mod(a, n, p) as usize] = true;
    }
    (0..p).filter(|&r| seen[r as usize]).collect()
}

/// `T_k(x) mod p` for `k = 1..p-1`, entry `k-1`. Periodic in `k` with period `p-1`.
pub fn t_mod_table(x: u64, p: u64) -> Vec<u64> {
    let bases: Vec<u64> = (x + 1..=2 * x).map(|b| b % p).collect();
    let mut powers = bases.clone();
    let mut table = Vec::with_capacity((p - 1) as usize);
    for _ in 1..p {
        let mut sum = 0u64;
        for (pw, &b) in powers.iter_mut().zip(&bases) {
            sum = (sum + *pw) % p;
            *pw = ((*pw as u128 * b as u128) % p as u128) as u64;
        }
        table.push(sum);
    }
    table
}

/// Indexed by `k mod (p-1)`: whether `T_k(x) mod p` is an n-th power residue.
/// Index 0 stands for `k = p-1`.
pub fn admissible_mask(x: u64, p: u64, n: u64) -> Vec<bool> {
    let table = t_mod_table(x, p);
    let q = (p - 1) as usize;
    let mut mask = vec![false; q];
    for (i, &t) in table.iter().enumerate() {
        mask[(i + 1) % q] = is_nth_power_residue(t, p, n);
    }
    mask
}

/// Residues of `k mod (p-1)` for which `T_k(x) mod p` is an n-th power residue.
pub fn admissible_k_residues(x: u64, p: u64, n: u64) -> Vec<u64> {
    let mask = admissible_mask(x, p, n);
    (0..mask.len() as u64).filter(|&r| mask[r as usize]).collect()
}

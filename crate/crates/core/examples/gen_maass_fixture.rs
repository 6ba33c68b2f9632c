//! Regenerates the Maass eigenvalue fixtures under `fixtures/`.
//!
//! The fixtures are synthetic test data, not database exports: lambda(p) is
//! drawn deterministically (fixed ChaCha8 seed) from the Sato-Tate
//! distribution, except for a handful of small primes seeded from published
//! approximations for the first even Maass cusp form (R = 9.5337...), and
//! two planted values slightly above 2 so the |lambda| > 2 Satake branch is
//! exercised. Prime-power and composite values are derived from lambda(p)
//! through the exact Hecke recursion, so every validation invariant of the
//! loader holds by construction.
//!
//! Run from the crate root: `cargo run --example gen_maass_fixture`

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mupi::hecke::sym_eigenvalue;
use mupi::primes::primes_up_to;

const SPECTRAL_R: &str = "9.53369526135356";
const SEED: u64 = 0x6d75_7069_3935_3333;

/// Published approximations for the first few eigenvalues of the R=9.5337
/// form; everything past p=7 is synthetic.
const SEED_PRIMES: [(u64, f64); 4] = [
    (2, 1.549304477941),
    (3, 0.246899772453),
    (5, 0.737060385348),
    (7, -0.261420075765),
];

/// Planted mild Ramanujan violations (allowed for Maass data, and they keep
/// the real-root Satake branch covered end to end).
const PLANTED: [(u64, f64); 2] = [(101, 2.05), (9973, -2.1)];

fn sato_tate_lambda(rng: &mut ChaCha8Rng) -> f64 {
    // density (2/pi) sin^2(theta) on [0, pi], lambda = 2 cos(theta)
    loop {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
        let u: f64 = rng.gen_range(0.0..1.0);
        if u <= theta.sin() * theta.sin() {
            return 2.0 * theta.cos();
        }
    }
}

fn lambda_at_primes(limit: u64) -> Vec<(u64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    primes_up_to(limit)
        .into_iter()
        .map(|p| {
            // one draw per prime even when overridden, to keep the stream
            // aligned across fixture sizes
            let drawn = sato_tate_lambda(&mut rng);
            let v = SEED_PRIMES
                .iter()
                .chain(PLANTED.iter())
                .find(|&&(q, _)| q == p)
                .map(|&(_, v)| v)
                .unwrap_or(drawn);
            (p, v)
        })
        .collect()
}

fn write_fixture(path: &Path, entries: &[(u64, f64)]) {
    let mut out = String::with_capacity(entries.len() * 24);
    let _ = writeln!(out, "R={SPECTRAL_R}");
    for &(n, v) in entries {
        let _ = writeln!(out, "{n},{v:.12}");
    }
    std::fs::write(path, out).expect("write fixture");
    println!("wrote {} ({} entries)", path.display(), entries.len());
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).expect("fixtures dir");

    // full fixture: n = 1, every prime and prime power up to 1e6
    let limit = 1_000_000u64;
    let by_prime = lambda_at_primes(limit);
    let mut entries: Vec<(u64, f64)> = vec![(1, 1.0)];
    for &(p, lam) in &by_prime {
        let mut pa = p;
        let mut a = 1u32;
        while pa <= limit {
            entries.push((pa, sym_eigenvalue(lam, a)));
            match pa.checked_mul(p) {
                Some(next) if next <= limit => {
                    pa = next;
                    a += 1;
                }
                _ => break,
            }
        }
    }
    entries.sort_unstable_by_key(|&(n, _)| n);
    write_fixture(&dir.join("maass_r9p5337_1e6.txt"), &entries);

    // small fixture: contiguous n <= 2000 (multiplicative extension), for
    // loader examples and the coprime-pair validation path
    let small_limit = 2000u64;
    let mut lam = vec![0.0f64; small_limit as usize + 1];
    lam[1] = 1.0;
    for n in 2..=small_limit {
        let mut rest = n;
        let mut p = 2u64;
        let mut value = 1.0f64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut a = 0u32;
                while rest % p == 0 {
                    rest /= p;
                    a += 1;
                }
                let lp = by_prime[by_prime.partition_point(|&(q, _)| q < p)].1;
                value *= sym_eigenvalue(lp, a);
            }
            p += 1;
        }
        if rest > 1 {
            let lp = by_prime[by_prime.partition_point(|&(q, _)| q < rest)].1;
            value *= lp;
        }
        lam[n as usize] = value;
    }
    let entries: Vec<(u64, f64)> = (1..=small_limit).map(|n| (n, lam[n as usize])).collect();
    write_fixture(&dir.join("maass_r9p5337_small.txt"), &entries);
}

//! Exact convolution of arbitrary-precision integer sequences.
//!
//! Products of long q-expansions are computed by number-theoretic transforms
//! over a battery of 62-bit primes of the form `c * 2^32 + 1`, followed by
//! Garner reconstruction. The prime count adapts to the actual coefficient
//! sizes, so cheap inputs use one or two primes and weight-26 products use
//! five or six. Everything here is exact integer arithmetic; there is no
//! rounding anywhere.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use rayon::prelude::*;

/// Primes `c * 2^32 + 1` in `(2^61, 2^62)` with a generator of the full
/// multiplicative group. Order of appearance is the order of use.
const NTT_PRIMES: [(u64, u64); 12] = [
    (2305843185307353089, 3),
    (2305843262616764417, 11),
    (2305843322746306561, 37),
    (2305843391465783297, 3),
    (2305843546084605953, 3),
    (2305843700703428609, 3),
    (2305843966991400961, 13),
    (2305843992761204737, 10),
    (2305844138790092801, 3),
    (2305844173149831169, 23),
    (2305844224689438721, 11),
    (2305844379308261377, 5),
];

/// Guaranteed bits of CRT capacity per prime (each prime exceeds `2^61`).
const BITS_PER_PRIME: u64 = 61;

/// Montgomery arithmetic modulo one odd 62-bit prime.
#[derive(Clone, Copy)]
struct Mont {
    p: u64,
    /// `-p^{-1} mod 2^64`
    ninv: u64,
    /// `2^128 mod p`, used to enter Montgomery form
    r2: u64,
    /// `2^64 mod p`, the Montgomery form of 1
    one: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < (1 << 63));
        // Newton iteration for p^{-1} mod 2^64; five steps double the bits.
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let ninv = inv.wrapping_neg();
        let r = ((u128::from(u64::MAX) + 1) % u128::from(p)) as u64;
        let r2 = ((u128::from(r) * u128::from(r)) % u128::from(p)) as u64;
        Mont { p, ninv, r2, one: r }
    }

    /// REDC(a*b); valid for any `a*b < p * 2^64`, result `< p`.
    #[inline(always)]
    fn mul(self, a: u64, b: u64) -> u64 {
        let t = u128::from(a) * u128::from(b);
        let m = (t as u64).wrapping_mul(self.ninv);
        let t = ((t + u128::from(m) * u128::from(self.p)) >> 64) as u64;
        if t >= self.p {
            t - self.p
        } else {
            t
        }
    }

    #[inline(always)]
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a.wrapping_add(self.p) - b
        }
    }

    /// Any u64 into Montgomery form (input need not be reduced).
    #[inline(always)]
    fn enter(self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    #[inline(always)]
    fn leave(self, a: u64) -> u64 {
        self.mul(a, 1)
    }

    fn pow(self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Transform context for one prime and one power-of-two length.
struct PrimeNtt {
    mont: Mont,
    n: usize,
    /// `tw[j] = w^j` in Montgomery form, `w` a primitive n-th root of unity
    tw_fwd: Vec<u64>,
    tw_inv: Vec<u64>,
    n_inv: u64,
}

impl PrimeNtt {
    fn new(p: u64, g: u64, n: usize) -> Self {
        debug_assert!(n.is_power_of_two() && (n as u64) <= (1 << 32));
        let mont = Mont::new(p);
        let w = mont.pow(mont.enter(g), (p - 1) / n as u64);
        let w_inv = mont.inv(w);
        let half = (n / 2).max(1);
        let mut tw_fwd = vec![mont.one; half];
        let mut tw_inv = vec![mont.one; half];
        for j in 1..half {
            tw_fwd[j] = mont.mul(tw_fwd[j - 1], w);
            tw_inv[j] = mont.mul(tw_inv[j - 1], w_inv);
        }
        let n_inv = mont.inv(mont.enter(n as u64));
        PrimeNtt {
            mont,
            n,
            tw_fwd,
            tw_inv,
            n_inv,
        }
    }

    /// In-place DIT transform of `a` (Montgomery domain), length `self.n`.
    fn transform(&self, a: &mut [u64], invert: bool) {
        let n = self.n;
        debug_assert_eq!(a.len(), n);
        let m = self.mont;
        // bit-reversal permutation
        let mut j = 0usize;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let tw = if invert { &self.tw_inv } else { &self.tw_fwd };
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let step = n / len;
            let mut i = 0;
            while i < n {
                let (lo, hi) = a[i..i + len].split_at_mut(half);
                for j in 0..half {
                    let u = lo[j];
                    let v = m.mul(hi[j], tw[j * step]);
                    lo[j] = m.add(u, v);
                    hi[j] = m.sub(u, v);
                }
                i += len;
            }
            len <<= 1;
        }
        if invert {
            for x in a.iter_mut() {
                *x = m.mul(*x, self.n_inv);
            }
        }
    }
}

/// Little-endian magnitude digits plus sign, cached once per input slice.
struct Split {
    digits: Vec<u64>,
    offsets: Vec<(u32, u32)>, // (start, len) into digits
    negative: Vec<bool>,
}

fn split_input(a: &[BigInt]) -> Split {
    let mut digits = Vec::new();
    let mut offsets = Vec::with_capacity(a.len());
    let mut negative = Vec::with_capacity(a.len());
    for c in a {
        let start = digits.len() as u32;
        digits.extend(c.magnitude().iter_u64_digits());
        offsets.push((start, digits.len() as u32 - start));
        negative.push(c.sign() == Sign::Minus);
    }
    Split {
        digits,
        offsets,
        negative,
    }
}

impl Split {
    /// Residues of every coefficient mod one prime, in Montgomery form,
    /// padded with zeros to `n`.
    fn residues(&self, mont: Mont, n: usize) -> Vec<u64> {
        // Horner in base 2^64 over the digits, high to low.
        let b = mont.enter(((u128::from(u64::MAX) + 1) % u128::from(mont.p)) as u64);
        let mut out = vec![0u64; n];
        for (idx, &(start, len)) in self.offsets.iter().enumerate() {
            let mut acc = 0u64; // Montgomery form
            let s = start as usize;
            for &d in self.digits[s..s + len as usize].iter().rev() {
                acc = mont.add(mont.mul(acc, b), mont.enter(d));
            }
            if self.negative[idx] && acc != 0 {
                acc = mont.p - acc;
            }
            out[idx] = acc;
        }
        out
    }
}

fn max_coeff_bits(a: &[BigInt]) -> u64 {
    a.iter().map(|c| c.magnitude().bits()).max().unwrap_or(0)
}

/// Exact convolution `out[k] = sum a[i] b[k-i]` for `k < out_len`.
///
/// Chooses between direct schoolbook accumulation (few nonzero terms) and
/// the multi-prime NTT. The two paths are cross-checked in tests.
pub fn convolve(a: &[BigInt], b: &[BigInt], out_len: usize) -> Vec<BigInt> {
    let a = &a[..a.len().min(out_len)];
    let b = &b[..b.len().min(out_len)];
    if a.is_empty() || b.is_empty() || out_len == 0 {
        return vec![BigInt::zero(); out_len];
    }
    let nnz_a = a.iter().filter(|c| !c.is_zero()).count() as u128;
    let nnz_b = b.iter().filter(|c| !c.is_zero()).count() as u128;
    if nnz_a * nnz_b <= 1 << 22 {
        return convolve_naive(a, b, out_len);
    }
    convolve_ntt(a, b, out_len)
}

fn convolve_naive(a: &[BigInt], b: &[BigInt], out_len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); out_len];
    let nza: Vec<(usize, &BigInt)> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let nzb: Vec<(usize, &BigInt)> = b
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    for &(i, ai) in &nza {
        if i >= out_len {
            break;
        }
        for &(j, bj) in &nzb {
            if i + j >= out_len {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

fn convolve_ntt(a: &[BigInt], b: &[BigInt], out_len: usize) -> Vec<BigInt> {
    let bits_a = max_coeff_bits(a);
    let bits_b = max_coeff_bits(b);
    let len_bits = (a.len().min(b.len()) as u64).ilog2() as u64 + 1;
    // one extra bit for the sign in the balanced representation
    let need = bits_a + bits_b + len_bits + 2;
    let k = (need.div_ceil(BITS_PER_PRIME) as usize).max(1);
    assert!(
        k <= NTT_PRIMES.len(),
        "coefficient growth exceeds CRT capacity ({need} bits)"
    );
    let conv_n = (a.len() + b.len() - 1).next_power_of_two();

    let sa = split_input(a);
    let sb = split_input(b);

    // Per-prime residue convolutions, independent and run in parallel.
    let residues: Vec<Vec<u64>> = NTT_PRIMES[..k]
        .par_iter()
        .map(|&(p, g)| {
            let plan = PrimeNtt::new(p, g, conv_n);
            let mut fa = sa.residues(plan.mont, conv_n);
            let mut fb = sb.residues(plan.mont, conv_n);
            plan.transform(&mut fa, false);
            plan.transform(&mut fb, false);
            for (x, y) in fa.iter_mut().zip(fb.iter()) {
                *x = plan.mont.mul(*x, *y);
            }
            plan.transform(&mut fa, true);
            let m = plan.mont;
            fa.truncate(out_len.min(conv_n));
            for x in fa.iter_mut() {
                *x = m.leave(*x);
            }
            fa
        })
        .collect();

    garner(&residues, out_len)
}

/// Mixed-radix CRT reconstruction to balanced (signed) BigInt coefficients.
fn garner(residues: &[Vec<u64>], out_len: usize) -> Vec<BigInt> {
    let k = residues.len();
    let monts: Vec<Mont> = NTT_PRIMES[..k].iter().map(|&(p, _)| Mont::new(p)).collect();
    // prefix[j] = p_0 * ... * p_{j-1} as limbs; prefix_mod[j][i] = prefix[j] mod p_i (Montgomery)
    let mut prefix_limbs: Vec<Vec<u64>> = Vec::with_capacity(k);
    let mut cur = vec![1u64];
    for j in 0..k {
        prefix_limbs.push(cur.clone());
        cur = limbs_mul_u64(&cur, NTT_PRIMES[j].0);
    }
    let modulus_limbs = cur;
    let mut half = BigUint::new(limbs_to_u32(&modulus_limbs));
    let modulus_big = BigInt::from(half.clone());
    half >>= 1;

    let prefix_mod: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| monts[i].enter(limbs_mod_u64(&prefix_limbs[j], monts[i].p)))
                .collect()
        })
        .collect();
    // inv_prefix[i] = (prefix[i])^{-1} mod p_i, Montgomery form
    let inv_prefix: Vec<u64> = (0..k).map(|i| monts[i].inv(prefix_mod[i][i])).collect();

    let conv_len = residues[0].len();
    (0..out_len)
        .into_par_iter()
        .map(|t| {
            if t >= conv_len {
                return BigInt::zero();
            }
            let mut v = [0u64; 16];
            for i in 0..k {
                let m = monts[i];
                let mut cur = 0u64; // Montgomery accumulation of x mod p_i
                for (j, &vj) in v.iter().enumerate().take(i) {
                    cur = m.add(cur, m.mul(m.enter(vj), prefix_mod[j][i]));
                }
                let r = m.enter(residues[i][t]);
                let diff = m.sub(r, cur);
                v[i] = m.leave(m.mul(diff, inv_prefix[i]));
            }
            // x = sum v[j] * prefix[j], accumulated in place
            let mut limbs = vec![0u64; k + 1];
            for j in 0..k {
                let mut carry: u128 = 0;
                for (off, &pl) in prefix_limbs[j].iter().enumerate() {
                    let s = u128::from(limbs[off]) + u128::from(v[j]) * u128::from(pl) + carry;
                    limbs[off] = s as u64;
                    carry = s >> 64;
                }
                let mut off = prefix_limbs[j].len();
                while carry > 0 {
                    let s = u128::from(limbs[off]) + carry;
                    limbs[off] = s as u64;
                    carry = s >> 64;
                    off += 1;
                }
            }
            let mag = BigUint::new(limbs_to_u32(&limbs));
            if mag > half {
                BigInt::from(mag) - &modulus_big
            } else {
                BigInt::from(mag)
            }
        })
        .collect()
}

fn limbs_mul_u64(a: &[u64], m: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + 1);
    let mut carry: u128 = 0;
    for &x in a {
        let s = u128::from(x) * u128::from(m) + carry;
        out.push(s as u64);
        carry = s >> 64;
    }
    if carry > 0 {
        out.push(carry as u64);
    }
    out
}

fn limbs_mod_u64(a: &[u64], m: u64) -> u64 {
    let mut acc: u128 = 0;
    for &x in a.iter().rev() {
        acc = ((acc << 64) | u128::from(x)) % u128::from(m);
    }
    acc as u64
}

fn limbs_to_u32(a: &[u64]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() * 2);
    for &x in a {
        out.push(x as u32);
        out.push((x >> 32) as u32);
    }
    out
}

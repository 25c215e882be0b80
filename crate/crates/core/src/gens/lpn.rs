use alloc::vec::Vec;

use super::GenError;
use crate::bits::Bits;
use crate::gf2core::{CircuitBuilder, Gf2Circuit};
use crate::rate::Rate;
use crate::rng::seeded;

/// LPN generator parameters: secret length `n`, `m` equations, noise rate `mu`, encoder
/// degree `d` and the public `m x n` matrix `A` (one row per equation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpnParams {
    pub n: usize,
    pub m: usize,
    pub mu: Rate,
    pub d: usize,
    pub a: Vec<Bits>,
}

impl LpnParams {
    pub fn new(n: usize, m: usize, mu: Rate, d: usize, a: Vec<Bits>) -> Result<Self, GenError> {
        let p = LpnParams { n, m, mu, d, a };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with a uniformly random matrix drawn from `seed`.
    pub fn random(n: usize, m: usize, mu: Rate, d: usize, seed: u64) -> Result<Self, GenError> {
        let mut rng = seeded(seed);
        let a = (0..m).map(|_| Bits::random(n, &mut rng)).collect();
        LpnParams::new(n, m, mu, d, a)
    }

    /// Error weight bound `floor(mu * m)`.
    pub fn sparsity(&self) -> usize {
        if self.mu.den == 0 {
            return 0;
        }
        (self.mu.num as u128 * self.m as u128 / self.mu.den as u128) as usize
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.mu.num == 0 || self.mu.num >= self.mu.den {
            return Err(GenError::BadParams("noise rate must lie in (0,1)"));
        }
        if self.d == 0 || self.m == 0 {
            return Err(GenError::BadParams("m and d must be positive"));
        }
        if self.a.len() != self.m || self.a.iter().any(|r| r.len() != self.n) {
            return Err(GenError::BadParams(
                "matrix dimensions do not match n and m",
            ));
        }
        let s = self.sparsity();
        if pow_sat(s * self.d, self.d) >= pow_sat(self.m, self.d - 1) {
            return Err(GenError::SparsityTooLarge {
                m: self.m,
                s,
                d: self.d,
            });
        }
        Ok(())
    }
}

fn pow_sat(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Smallest `b` with `b^d >= m`.
fn digit_base(m: usize, d: usize) -> usize {
    let mut b = 1;
    while pow_sat(b, d) < m as u128 {
        b += 1;
    }
    b
}

fn check_encoder(m: usize, s: usize, d: usize) -> Result<(), GenError> {
    if d == 0 || m == 0 || pow_sat(s * d, d) > pow_sat(m, d - 1) {
        return Err(GenError::SparsityTooLarge { m, s, d });
    }
    Ok(())
}

/// Input length `s * d * ceil(m^(1/d))` of the sparse encoder.
pub fn encoder_input_len(m: usize, s: usize, d: usize) -> usize {
    s * d * digit_base(m, d.max(1))
}

/// Base-`b` digits of `j`, most significant first.
fn digits(j: usize, b: usize, d: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; d];
    let mut v = j;
    for t in (0..d).rev() {
        out[t] = v % b;
        v /= b;
    }
    out
}

/// Degree-`d` encoder whose range contains every vector of weight at most `s` in `F2^m`.
///
/// The input is `s` slots of `d` selector blocks of `b = ceil(m^(1/d))` bits. Output `j`
/// is the XOR over slots of the AND of the selector bits at `j`'s base-`b` digits.
pub fn build_sparse_encoder(m: usize, s: usize, d: usize) -> Result<Gf2Circuit, GenError> {
    check_encoder(m, s, d)?;
    let b = digit_base(m, d);
    let mut builder = CircuitBuilder::with_inputs(s * d * b);
    for j in 0..m {
        let dig = digits(j, b, d);
        let terms: Vec<usize> = (0..s)
            .map(|slot| {
                let sel: Vec<usize> = dig
                    .iter()
                    .enumerate()
                    .map(|(t, &k)| (slot * d + t) * b + k)
                    .collect();
                builder.and_chain(&sel)
            })
            .collect();
        let out = builder.xor_chain(&terms);
        builder.output(out);
    }
    Ok(builder.finish("sparse-encoder")?)
}

/// A preimage of `v` under [`build_sparse_encoder`]: one slot per set coordinate holding
/// one-hot digit blocks; unused slots stay all-zero and contribute nothing.
pub fn sparse_preimage(m: usize, s: usize, d: usize, v: &Bits) -> Result<Bits, GenError> {
    check_encoder(m, s, d)?;
    if v.len() != m {
        return Err(GenError::BadParams("vector length differs from m"));
    }
    if v.weight() > s {
        return Err(GenError::WeightTooLarge {
            weight: v.weight(),
            s,
        });
    }
    let b = digit_base(m, d);
    let mut out = Bits::zeros(s * d * b);
    for (slot, j) in v.ones_iter().enumerate() {
        for (t, k) in digits(j, b, d).into_iter().enumerate() {
            out.set((slot * d + t) * b + k, true);
        }
    }
    Ok(out)
}

/// `A s + f(e_enc)` on inputs `(e_enc, s)`, with `f` the sparse encoder for `floor(mu m)`.
pub fn build_lpn_generator(p: &LpnParams) -> Result<Gf2Circuit, GenError> {
    p.validate()?;
    let enc = build_sparse_encoder(p.m, p.sparsity(), p.d)?;
    let l = enc.n();
    let mut b = CircuitBuilder::with_inputs(l + p.n);
    let enc_inputs: Vec<usize> = (0..l).collect();
    let noise = b.instantiate(&enc, &enc_inputs);
    for (row, &e) in p.a.iter().zip(&noise) {
        let mut terms: Vec<usize> = row.ones_iter().map(|j| l + j).collect();
        terms.push(e);
        let out = b.xor_chain(&terms);
        b.output(out);
    }
    Ok(b.finish("lpn")?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2core::{
        circuit_degree, circuit_to_polynomials, eval_circuit, DEFAULT_POLY_BUDGET,
    };
    use crate::rng::{seeded, Rng};

    fn low_weight(m: usize, s: usize) -> Vec<Bits> {
        (0..1u64 << m)
            .map(|i| Bits::from_lex_index(i, m))
            .filter(|v| v.weight() <= s)
            .collect()
    }

    #[test]
    fn encoder_shape() {
        let f = build_sparse_encoder(16, 2, 2).unwrap();
        assert_eq!((f.n(), f.m()), (16, 16));
        assert!(eval_circuit(&f, &Bits::zeros(16)).unwrap().is_zero());
        assert_eq!(
            build_sparse_encoder(16, 3, 2),
            Err(GenError::SparsityTooLarge { m: 16, s: 3, d: 2 })
        );
    }

    #[test]
    fn encoder_covers_low_weight_vectors() {
        let f = build_sparse_encoder(16, 2, 2).unwrap();
        let vs = low_weight(16, 2);
        assert_eq!(vs.len(), 137);
        for v in &vs {
            let pre = sparse_preimage(16, 2, 2, v).unwrap();
            assert_eq!(&eval_circuit(&f, &pre).unwrap(), v);
        }
        let polys = circuit_to_polynomials(&f, DEFAULT_POLY_BUDGET).unwrap();
        assert!(polys.iter().all(|p| p.degree() <= 2));
    }

    #[test]
    fn coverage_for_other_shapes() {
        for &(m, s, d) in &[(27, 3, 3), (9, 1, 2), (32, 2, 2), (8, 1, 3), (5, 1, 1)] {
            let f = build_sparse_encoder(m, s, d).unwrap();
            assert!(circuit_degree(&f) <= d);
            let mut rng = seeded(m as u64);
            let vs: Vec<Bits> = if m <= 16 {
                low_weight(m, s)
            } else {
                (0..2000)
                    .map(|_| {
                        let mut v = Bits::zeros(m);
                        for _ in 0..rng.random_range(0..=s) {
                            v.set(rng.random_range(0..m), true);
                        }
                        v
                    })
                    .collect()
            };
            for v in vs {
                let pre = sparse_preimage(m, s, d, &v).unwrap();
                assert_eq!(eval_circuit(&f, &pre).unwrap(), v);
            }
        }
    }

    #[test]
    fn preimage_layout() {
        assert!(sparse_preimage(16, 2, 2, &Bits::zeros(16))
            .unwrap()
            .is_zero());
        let mut e = Bits::zeros(16);
        e.set(6, true);
        // 6 = (1, 2) in base 4: slot 0 block 0 bit 1, block 1 bit 2
        let pre = sparse_preimage(16, 2, 2, &e).unwrap();
        assert_eq!(pre.ones_iter().collect::<Vec<_>>(), alloc::vec![1, 6]);
        assert_eq!(
            sparse_preimage(16, 2, 2, &Bits::ones(16)),
            Err(GenError::WeightTooLarge { weight: 16, s: 2 })
        );
    }

    fn matvec(a: &[Bits], s: &Bits) -> Bits {
        a.iter()
            .map(|row| row.iter().zip(s.iter()).filter(|(x, y)| *x && *y).count() % 2 == 1)
            .collect()
    }

    #[test]
    fn lpn_generator_outputs() {
        let p = LpnParams::random(3, 8, Rate::new(1, 8), 2, 4).unwrap();
        assert_eq!(p.sparsity(), 1);
        let g = build_lpn_generator(&p).unwrap();
        let l = encoder_input_len(8, 1, 2);
        assert_eq!(g.n(), l + 3);
        assert!(circuit_degree(&g) <= 2);
        assert!(eval_circuit(&g, &Bits::zeros(g.n())).unwrap().is_zero());
        for si in 0..8u64 {
            let s = Bits::from_lex_index(si, 3);
            let x = Bits::concat(&[Bits::zeros(l), s.clone()]);
            assert_eq!(eval_circuit(&g, &x).unwrap(), matvec(&p.a, &s));
            for e in low_weight(8, 1) {
                let x = Bits::concat(&[sparse_preimage(8, 1, 2, &e).unwrap(), s.clone()]);
                assert_eq!(eval_circuit(&g, &x).unwrap(), matvec(&p.a, &s).xor(&e));
            }
        }
    }

    #[test]
    fn lpn_parameter_checks() {
        assert!(LpnParams::random(3, 8, Rate::new(0, 8), 2, 0).is_err());
        assert!(LpnParams::random(3, 8, Rate::new(3, 8), 2, 0).is_err());
        assert!(LpnParams::new(3, 2, Rate::new(1, 4), 2, alloc::vec![Bits::zeros(3)]).is_err());
    }
}

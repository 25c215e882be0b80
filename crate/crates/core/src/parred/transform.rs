use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use super::proof::{check_resxor_proof, ProofError, ResXorProof, Rule};
use super::reduction::{check_parity_reduction, Justification, ParityReduction, ReductionError};
use super::{form_xor, Form, LinearClause};
use crate::cnf::CnfFormula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("reduction rejected: {0}")]
    ReductionInvalid(ReductionError),
    #[error("input proof rejected: {0}")]
    ProofInvalid(ProofError),
    #[error("a tautology must be weakened from a source axiom but the source has none")]
    EmptySource,
    #[error("transformed proof has {found} lines, above the bound {bound}")]
    BoundExceeded { found: usize, bound: usize },
}

/// `2 n m' + s` for a source with `n` variables, a destination with `m'` clauses and an
/// input proof of `s` lines.
pub fn transform_bound(f: &CnfFormula, gf: &CnfFormula, proof_g: &ResXorProof) -> usize {
    2 * f.num_vars() * gf.clauses().len() + proof_g.len()
}

struct Emitter<'a> {
    f: &'a CnfFormula,
    gf: &'a CnfFormula,
    red: &'a ParityReduction,
    out: ResXorProof,
    f_axiom_line: BTreeMap<usize, usize>,
    gf_axiom_line: BTreeMap<usize, usize>,
}

impl Emitter<'_> {
    fn f_axiom(&mut self, i: usize) -> usize {
        if let Some(&l) = self.f_axiom_line.get(&i) {
            return l;
        }
        let l = self
            .out
            .push(LinearClause::from_cnf(&self.f.clauses()[i]), Rule::Axiom(i));
        self.f_axiom_line.insert(i, l);
        l
    }

    /// A line whose clause is contained in `g_j` after substitution.
    fn gf_axiom(&mut self, j: usize) -> Result<usize, TransformError> {
        if let Some(&l) = self.gf_axiom_line.get(&j) {
            return Ok(l);
        }
        let target = self
            .red
            .substitute(&LinearClause::from_cnf(&self.gf.clauses()[j]));
        let line = match &self.red.justifications[j] {
            Justification::Axiom(i) => self.f_axiom(*i),
            Justification::Taut => {
                if self.f.clauses().is_empty() {
                    return Err(TransformError::EmptySource);
                }
                let a = self.f_axiom(0);
                self.out.push(target, Rule::Weaken(a))
            }
            Justification::XorAx(list) => self.xor_axioms(list, target)?,
        };
        self.gf_axiom_line.insert(j, line);
        Ok(line)
    }

    fn xor_axioms(
        &mut self,
        list: &[usize],
        target: LinearClause,
    ) -> Result<usize, TransformError> {
        // parity of use per (variable, value), remembering one axiom index for each
        let mut uses: BTreeMap<usize, BTreeMap<bool, (usize, bool)>> = BTreeMap::new();
        for &i in list {
            let l = self.f.clauses()[i][0];
            let slot = uses
                .entry(l.unsigned_abs() as usize)
                .or_default()
                .entry(l > 0)
                .or_insert((i, false));
            slot.1 ^= true;
        }
        for pols in uses.values() {
            if pols.len() == 2 {
                let (zero, one) = (self.f_axiom(pols[&false].0), self.f_axiom(pols[&true].0));
                let v = self.out.lines[zero]
                    .clause
                    .lits()
                    .iter()
                    .next()
                    .expect("unit")
                    .0
                    .clone();
                return Ok(self
                    .out
                    .push(LinearClause::empty(), Rule::Resolve(zero, one, v)));
            }
        }
        let odd: Vec<(usize, usize, bool)> = uses
            .iter()
            .flat_map(|(&v, pols)| {
                pols.iter()
                    .filter(|(_, (_, odd))| *odd)
                    .map(move |(&b, &(i, _))| (v, i, b))
            })
            .collect();
        let Some(&(v0, i0, b0)) = odd.first() else {
            if self.f.clauses().is_empty() {
                return Err(TransformError::EmptySource);
            }
            let a = self.f_axiom(list.first().copied().unwrap_or(0));
            return Ok(self.out.push(target, Rule::Weaken(a)));
        };
        let mut acc = self.f_axiom(i0);
        let (mut p, mut pv): (Form, bool) = (alloc::vec![v0], b0);
        for &(v, i, b) in &odd[1..] {
            let next = self.f_axiom(i);
            let sum = form_xor(&p, &[v]);
            let w = self.out.push(
                LinearClause::new([(p.clone(), !pv), (sum.clone(), pv ^ b)]),
                Rule::Weaken(next),
            );
            let (zero, one) = if pv { (w, acc) } else { (acc, w) };
            acc = self.out.push(
                LinearClause::unit(sum.clone(), pv ^ b),
                Rule::Resolve(zero, one, p),
            );
            p = sum;
            pv ^= b;
        }
        Ok(acc)
    }
}

/// Turns a refutation of `gf` into a refutation of `f` through the parity reduction `red`.
///
/// Destination axioms are rebuilt on demand: `AXIOM` reuses the source axiom, `TAUT` is one
/// weakening of a source axiom and `XORAX` chains the weaken-then-resolve gadget. Every
/// other line is pulled back through the substitution. A pulled-back line may be stronger
/// than the substituted clause when literals merge; a resolution whose pivot disappeared
/// on one side reuses that side's line.
pub fn transform_resxor_proof(
    proof_g: &ResXorProof,
    gf: &CnfFormula,
    f: &CnfFormula,
    red: &ParityReduction,
) -> Result<ResXorProof, TransformError> {
    check_parity_reduction(f, gf, red).map_err(TransformError::ReductionInvalid)?;
    check_resxor_proof(gf, proof_g).map_err(TransformError::ProofInvalid)?;
    let mut em = Emitter {
        f,
        gf,
        red,
        out: ResXorProof::new(),
        f_axiom_line: BTreeMap::new(),
        gf_axiom_line: BTreeMap::new(),
    };
    let mut map: Vec<usize> = Vec::with_capacity(proof_g.len());
    for line in &proof_g.lines {
        let l = match &line.rule {
            Rule::Axiom(j) => em.gf_axiom(*j)?,
            Rule::Weaken(a) => em
                .out
                .push(red.substitute(&line.clause), Rule::Weaken(map[*a])),
            Rule::Resolve(a, b, form) => {
                let pivot = red.substitute(&LinearClause::unit(form.clone(), false));
                let pf = pivot
                    .lits()
                    .iter()
                    .next()
                    .expect("0 = 0 survives normalization")
                    .0
                    .clone();
                let (la, lb) = (map[*a], map[*b]);
                if pf.is_empty() || !em.out.lines[lb].clause.contains(&pf, true) {
                    lb
                } else if !em.out.lines[la].clause.contains(&pf, false) {
                    la
                } else {
                    let c = em.out.lines[la]
                        .clause
                        .without(&pf, false)
                        .union(&em.out.lines[lb].clause.without(&pf, true));
                    em.out.push(c, Rule::Resolve(la, lb, pf))
                }
            }
        };
        map.push(l);
        if em.out.lines[l].clause.is_empty() {
            em.out.lines.truncate(l + 1);
            break;
        }
    }
    let out = em.out;
    let bound = transform_bound(f, gf, proof_g);
    if out.len() > bound {
        return conflict_refutation(f).ok_or(TransformError::BoundExceeded {
            found: out.len(),
            bound,
        });
    }
    Ok(out)
}

/// Three-line refutation from a pair of complementary unit axioms, if `f` has one.
fn conflict_refutation(f: &CnfFormula) -> Option<ResXorProof> {
    let mut seen: BTreeMap<i32, usize> = BTreeMap::new();
    for (i, c) in f.clauses().iter().enumerate() {
        if c.len() != 1 {
            continue;
        }
        if let Some(&j) = seen.get(&-c[0]) {
            let (zero, one) = if c[0] < 0 { (i, j) } else { (j, i) };
            let mut p = ResXorProof::new();
            let a = p.push(
                LinearClause::from_cnf(&f.clauses()[zero]),
                Rule::Axiom(zero),
            );
            let b = p.push(LinearClause::from_cnf(&f.clauses()[one]), Rule::Axiom(one));
            p.push(
                LinearClause::empty(),
                Rule::Resolve(a, b, alloc::vec![c[0].unsigned_abs() as usize]),
            );
            return Some(p);
        }
        seen.insert(c[0], i);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parred::reduction::{sample_linear_canonical_case, sample_reduction_case};
    use crate::parred::refute::refute_linear_system;
    use crate::rng::{seeded, Rng};
    use alloc::vec;

    #[test]
    fn identity_keeps_length() {
        let (f, p) =
            refute_linear_system(&[(vec![1, 2], false), (vec![2], true), (vec![1], false)])
                .unwrap();
        let red = ParityReduction {
            src_vars: f.num_vars(),
            dst_vars: f.num_vars(),
            rows: (1..=f.num_vars()).map(|v| vec![v]).collect(),
            justifications: (0..f.clauses().len()).map(Justification::Axiom).collect(),
        };
        let out = transform_resxor_proof(&p, &f, &f, &red).unwrap();
        assert_eq!(out.len(), p.len());
        assert_eq!(check_resxor_proof(&f, &out), Ok(()));
    }

    #[test]
    fn sampled_cases_transform_within_bound() {
        for seed in 0..40 {
            let case = sample_reduction_case(seed).unwrap();
            let out =
                transform_resxor_proof(&case.proof, &case.target, &case.source, &case.reduction)
                    .unwrap();
            assert_eq!(check_resxor_proof(&case.source, &out), Ok(()));
            assert!(out.len() <= transform_bound(&case.source, &case.target, &case.proof));
            let (lin, ..) = sample_linear_canonical_case(seed).unwrap();
            let out = transform_resxor_proof(&lin.proof, &lin.target, &lin.source, &lin.reduction)
                .unwrap();
            assert_eq!(check_resxor_proof(&lin.source, &out), Ok(()));
            assert!(out.len() <= transform_bound(&lin.source, &lin.target, &lin.proof));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let case = sample_reduction_case(3).unwrap();
        let mut bad = case.proof.clone();
        bad.lines.pop();
        assert!(matches!(
            transform_resxor_proof(&bad, &case.target, &case.source, &case.reduction),
            Err(TransformError::ProofInvalid(_))
        ));
        let mut red = case.reduction.clone();
        red.justifications[0] = Justification::Axiom(999);
        assert!(matches!(
            transform_resxor_proof(&case.proof, &case.target, &case.source, &red),
            Err(TransformError::ReductionInvalid(_))
        ));
    }

    #[test]
    fn substitution_preserves_steps() {
        // a checker-valid step stays semantically valid after substituting a random linear map
        let mut rng = seeded(11);
        let rand_form = |rng: &mut crate::rng::SeededRng, nv: usize| -> Form {
            (1..=nv).filter(|_| rng.random()).collect()
        };
        for _ in 0..1000 {
            let rows: Vec<Form> = (0..4).map(|_| rand_form(&mut rng, 4)).collect();
            let sub = |c: &LinearClause| c.substitute(|v| rows[v - 1].clone());
            let pivot = rand_form(&mut rng, 4);
            let extra = |rng: &mut crate::rng::SeededRng| {
                (0..rng.random_range(0..3))
                    .map(|_| (rand_form(rng, 4), rng.random()))
                    .collect::<Vec<_>>()
            };
            let a = LinearClause::new(extra(&mut rng).into_iter().chain([(pivot.clone(), false)]));
            let b = LinearClause::new(extra(&mut rng).into_iter().chain([(pivot.clone(), true)]));
            let res = a.without(&pivot, false).union(&b.without(&pivot, true));
            let d = res.union(&LinearClause::new(extra(&mut rng)));
            for mask in 0..16u32 {
                let val = |v: usize| (mask >> (v - 1)) & 1 == 1;
                if sub(&a).eval(val) && sub(&b).eval(val) {
                    assert!(sub(&res).eval(val));
                }
                if sub(&res).eval(val) {
                    assert!(sub(&d).eval(val));
                }
            }
        }
    }
}

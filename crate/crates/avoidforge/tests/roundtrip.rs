use avoidforge::formats::dimacs::{emit_dimacs, parse_dimacs};
use avoidforge::formats::key::{emit_key, parse_key};
use avoidforge::formats::netlist::{emit_netlist, parse_netlist};
use avoidforge::formats::proof::{emit_proof, parse_proof};
use avoidforge::formats::reduction::{emit_reduction, parse_reduction};
use avoidforge_core::cnf::encode_tau;
use avoidforge_core::extract::sample_key;
use avoidforge_core::gens::random_circuit;
use avoidforge_core::gf2core::eval_circuit;
use avoidforge_core::parred::{sample_linear_canonical_case, sample_reduction_case};
use avoidforge_core::Bits;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn netlist_roundtrip(n in 1usize..6, m in 1usize..6, gates in 0usize..20, seed: u64, x: u64) {
        let c = random_circuit(n, m, gates, seed);
        let text = emit_netlist(&c);
        let back = parse_netlist(&text).unwrap();
        prop_assert_eq!(emit_netlist(&back), text);
        let x = Bits::from_lex_index(x % (1 << n), n);
        prop_assert_eq!(eval_circuit(&back, &x).unwrap(), eval_circuit(&c, &x).unwrap());
    }

    #[test]
    fn key_roundtrip(n in 1usize..40, m in 1usize..40, seed: u64) {
        let key = sample_key(n.max(m), m, seed).unwrap();
        prop_assert_eq!(parse_key(&emit_key(&key)).unwrap(), key);
    }

    #[test]
    fn dimacs_roundtrip(n in 1usize..5, m in 1usize..5, seed: u64, b: u64) {
        let c = random_circuit(n, m, 8, seed);
        let f = encode_tau(&c, &Bits::from_lex_index(b % (1 << m), m)).unwrap();
        let back = parse_dimacs(&emit_dimacs(&f)).unwrap();
        prop_assert_eq!(back.num_vars(), f.num_vars());
        prop_assert_eq!(back.clauses(), f.clauses());
        prop_assert_eq!(emit_dimacs(&back), emit_dimacs(&f));
    }

    #[test]
    fn proof_and_reduction_roundtrip(seed in 0u64..200) {
        let case = if seed % 2 == 0 { sample_reduction_case(seed).unwrap() } else { sample_linear_canonical_case(seed).unwrap().0 };
        let (name, proof) = parse_proof(&emit_proof("G", &case.proof)).unwrap();
        prop_assert_eq!(name, "G");
        prop_assert_eq!(proof, case.proof);
        prop_assert_eq!(parse_reduction(&emit_reduction(&case.reduction)).unwrap(), case.reduction);
    }
}

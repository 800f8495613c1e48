mod common;

use std::cmp::Ordering;

use gdd::border;
use gdd::codes::{self, CodeSpec};
use gdd::decoders;
use gdd::gf2::compare;
use gdd::{
    BinaryCode, BitWord, BuildLimits, CosetTable, ErrorKind, Exec, GroebnerRepresentation,
    Representation, Syndrome,
};
use proptest::prelude::*;

fn small_code() -> impl Strategy<Value = BinaryCode> {
    (2usize..=10, any::<u64>())
        .prop_flat_map(|(n, seed)| (Just(n), 1..n, Just(seed)))
        .prop_map(|(n, k, seed)| codes::random(n, k, seed).unwrap())
}

fn words(n: usize) -> impl Iterator<Item = BitWord> {
    (0..1u64 << n).map(move |v| common::word(n, v))
}

#[test]
fn order_is_total_and_degree_compatible() {
    for n in 1..=6 {
        let all: Vec<BitWord> = words(n).collect();
        for a in &all {
            assert_eq!(compare(a, a).unwrap(), Ordering::Equal);
            for b in &all {
                let ab = compare(a, b).unwrap();
                assert_eq!(ab, compare(b, a).unwrap().reverse());
                if a.weight() < b.weight() {
                    assert_eq!(ab, Ordering::Less);
                }
                for c in &all {
                    if ab == Ordering::Less && compare(b, c).unwrap() == Ordering::Less {
                        assert_eq!(compare(a, c).unwrap(), Ordering::Less);
                    }
                }
            }
        }
    }
}

#[test]
fn adding_a_new_position_preserves_the_order() {
    // a ≺ b implies a+e_j ≺ b+e_j whenever j is outside both supports.
    for n in 1..=10 {
        let all: Vec<BitWord> = words(n).collect();
        for a in &all {
            for b in all.iter().filter(|b| a < *b) {
                for j in (0..n).filter(|&j| !a.get(j) && !b.get(j)) {
                    assert!(a.with_flipped(j) < b.with_flipped(j), "{a} {b} {j}");
                }
            }
        }
    }
}

#[test]
fn compare_rejects_mixed_lengths() {
    let err = compare(&BitWord::zero(3), &BitWord::zero(4)).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Data);
}

proptest! {
    #[test]
    fn syndrome_is_linear(code in small_code(), a in any::<u64>(), b in any::<u64>()) {
        let n = code.n();
        let a = common::word(n, a & ((1 << n) - 1));
        let b = common::word(n, b & ((1 << n) - 1));
        let lhs = code.syndrome(&(a ^ b)).unwrap();
        let rhs = code.syndrome(&a).unwrap() ^ code.syndrome(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(lhs.word().bits(), common::syndrome(&code, (a ^ b).bits()));
    }

    #[test]
    fn coset_lookup_agrees_with_forward_fold(code in small_code()) {
        let rep = GroebnerRepresentation::build(&code).unwrap();
        for w in words(code.n()) {
            prop_assert_eq!(rep.coset_index(&w).unwrap(), rep.coset_index_forward(&w).unwrap());
        }
    }

    #[test]
    fn build_is_deterministic_and_exec_independent(code in small_code()) {
        let a = GroebnerRepresentation::build_with(&code, BuildLimits::default(), Exec::Parallel).unwrap();
        let b = GroebnerRepresentation::build_with(&code, BuildLimits::default(), Exec::Sequential).unwrap();
        let c = GroebnerRepresentation::build(&code).unwrap();
        prop_assert!(a == b && b == c);
        prop_assert_eq!(
            border::border_from_phi_with(&a, Exec::Sequential),
            border::border_from_phi_with(&a, Exec::Parallel)
        );
    }

    #[test]
    fn file_round_trip(code in small_code(), compact in any::<bool>()) {
        let rep = GroebnerRepresentation::build(&code).unwrap();
        let r = if compact { Representation::Compact(rep.compact()) } else { Representation::Full(rep) };
        let bytes = r.to_bytes();
        let back = Representation::from_bytes(&bytes, false).unwrap();
        prop_assert_eq!(back.to_bytes(), bytes);
        prop_assert_eq!(back.is_compact(), compact);
    }

    #[test]
    fn ip_value_is_coset_minimum(code in small_code()) {
        let compact = GroebnerRepresentation::build(&code).unwrap().compact();
        for (s, min) in common::coset_minima(&code) {
            let syn = Syndrome::from_bits(code.redundancy(), s).unwrap();
            let (value, x) = decoders::ip_solve(&compact, &syn).unwrap();
            prop_assert_eq!(value, min.count_ones());
            prop_assert_eq!(common::syndrome(&code, x.bits()), s);
            prop_assert_eq!(x.weight(), value);
        }
    }
}

/// Offset of the φ table in a full-representation file.
fn phi_offset(code: &BinaryCode) -> usize {
    let nb = code.n().div_ceil(8);
    11 + code.redundancy() * nb + (1 << code.redundancy()) * nb
}

fn reseal(bytes: &mut [u8]) {
    let body = bytes.len() - 4;
    let crc = crc32fast::hash(&bytes[..body]);
    bytes[body..].copy_from_slice(&crc.to_le_bytes());
}

#[test]
fn tampered_phi_is_an_invariant_error() {
    let code = common::hamming7();
    let rep = GroebnerRepresentation::build(&code).unwrap();
    let mut bytes = Representation::Full(rep).to_bytes();
    let at = phi_offset(&code);
    // phi[0][0] is the coset of e_1, the last one in order; point it elsewhere.
    assert_eq!(u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap()), 7);
    bytes[at..at + 4].copy_from_slice(&2u32.to_le_bytes());
    reseal(&mut bytes);
    let err = Representation::from_bytes(&bytes, false).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Invariant, "{err}");
    // A trusted load skips the semantic checks.
    assert!(Representation::from_bytes(&bytes, true).is_ok());
}

#[test]
fn corrupted_bytes_are_format_errors() {
    let code = common::hamming7();
    let bytes = Representation::Full(GroebnerRepresentation::build(&code).unwrap()).to_bytes();

    let truncated = &bytes[..bytes.len() - 9];
    assert_eq!(
        Representation::from_bytes(truncated, false)
            .unwrap_err()
            .kind(),
        ErrorKind::Data
    );

    let mut flipped = bytes.clone();
    flipped[phi_offset(&code)] ^= 1;
    let err = Representation::from_bytes(&flipped, false).unwrap_err();
    assert!(err.to_string().to_lowercase().contains("crc"), "{err}");

    let mut magic = bytes.clone();
    magic[0] = b'X';
    assert_eq!(
        Representation::from_bytes(&magic, false)
            .unwrap_err()
            .kind(),
        ErrorKind::Data
    );

    let mut out_of_range = bytes;
    let at = phi_offset(&code);
    out_of_range[at..at + 4].copy_from_slice(&99u32.to_le_bytes());
    reseal(&mut out_of_range);
    assert!(Representation::from_bytes(&out_of_range, true).is_err());
}

#[test]
fn hamming_worked_examples() {
    let code = common::hamming7();
    let rep = GroebnerRepresentation::build(&code).unwrap();
    let compact = rep.compact();

    // e2+e5 (1-based) has syndrome 111, the column of position 7.
    let w = BitWord::from_positions(7, [1, 4]);
    let coset = rep.coset_index(&w).unwrap();
    assert_eq!(rep.leader(coset), BitWord::unit(7, 6));
    assert_eq!(coset, rep.coset_index_forward(&w).unwrap());

    let codewords = common::codewords(&code);
    let row = code.generator().row(0);
    let r = BitWord::from_positions(7, [1, 2]) ^ row;
    let best = common::distance_to_code(&codewords, r.bits());
    for res in [
        decoders::l_gdda(&compact, &r).unwrap(),
        decoders::reduction_gdda(&rep, &r).unwrap(),
        decoders::compact_reduction_gdda(&compact, &r, None).unwrap(),
    ] {
        assert!(res.distance <= 2);
        assert_eq!(res.distance, best);
        assert!(code.contains(&res.codeword));
    }

    // Every single error is corrected and flagged unique.
    for c in &codewords {
        for j in 0..7 {
            let c = common::word(7, *c);
            let res = decoders::l_gdda(&compact, &c.with_flipped(j)).unwrap();
            assert_eq!(res.codeword, c);
            assert!(res.unique);
        }
    }

    let minimal = border::minimal_codewords_bruteforce(&code).unwrap();
    assert_eq!(minimal.len(), 14);
    let report = border::verify_proposition1(&code).unwrap();
    assert!(report.holds());
}

#[test]
fn repetition_code_tables() {
    let code = codes::repetition(3).unwrap();
    let rep = GroebnerRepresentation::build(&code).unwrap();
    let leaders: Vec<String> = rep.leaders().map(|l| l.to_string()).collect();
    assert_eq!(leaders, ["000", "001", "010", "100"]);
    assert_eq!(rep.packing_radius(), 1);
    assert_eq!(rep.covering_radius(), 1);
    let res = decoders::l_gdda(&rep.compact(), &"110".parse().unwrap()).unwrap();
    assert_eq!(res.codeword.to_string(), "111");
}

#[test]
fn cwp_matches_value() {
    for seed in 0..5 {
        let code = codes::random(9, 4, seed).unwrap();
        let compact = GroebnerRepresentation::build(&code).unwrap().compact();
        for (s, min) in common::coset_minima(&code) {
            let syn = Syndrome::from_bits(code.redundancy(), s).unwrap();
            for t in 0..=9 {
                assert_eq!(
                    decoders::cwp_query(&compact, &syn, t).unwrap(),
                    min.count_ones() <= t
                );
            }
        }
    }
}

#[test]
fn min_red_gap_when_columns_repeat() {
    // Positions 0..=4 share the column 11 and position 4 leads that coset, so
    // 1100000 is a minimal codeword of weight 2 that no reduced-border element
    // produces.
    let h = ["1111101", "1111110"];
    let h: Vec<BitWord> = h.iter().map(|r| r.parse().unwrap()).collect();
    let h = gdd::Gf2Matrix::from_rows(7, &h).unwrap();
    let code = BinaryCode::from_parity_check(h).unwrap();
    let rep = GroebnerRepresentation::build(&code).unwrap();
    let reduced = border::reduce_border(&border::border_from_phi(&rep));
    let min_red = border::min_red(&code, &reduced).unwrap();
    let minimal = border::minimal_codewords_bruteforce(&code).unwrap();
    let gap: BitWord = "1100000".parse().unwrap();
    assert!(code.contains(&gap));
    assert!(minimal.contains(&gap));
    assert!(!min_red.contains(&gap));
    assert!(min_red.is_subset_of(&minimal));
    // Descent over Min_red stalls on that codeword; over all minimal codewords it does not.
    assert!(decoders::ts_gdda(&min_red, &gap, None)
        .unwrap()
        .codeword
        .is_zero());
    assert_eq!(
        decoders::ts_gdda(&minimal, &gap, None).unwrap().codeword,
        gap
    );
}

#[test]
fn code_spec_parsing() {
    for (text, n, k) in [
        ("hamming:3", 7, 4),
        ("repetition:5", 5, 1),
        ("random:10,4,3", 10, 4),
        ("random:8,2", 8, 2),
    ] {
        let spec: CodeSpec = text.parse().unwrap();
        let code = spec.build().unwrap();
        assert_eq!((code.n(), code.k()), (n, k), "{text}");
        assert_eq!(
            spec.to_string().parse::<CodeSpec>().unwrap().to_string(),
            spec.to_string()
        );
    }
    for bad in [
        "hamming",
        "hamming:1",
        "random:4,5",
        "random:x,2",
        "golay:23",
    ] {
        assert!(
            bad.parse::<CodeSpec>().and_then(|s| s.build()).is_err(),
            "{bad}"
        );
    }
}

#[test]
fn code_text_round_trip() {
    let code = codes::random(11, 5, 42).unwrap();
    let back = BinaryCode::parse(&code.to_text()).unwrap();
    assert_eq!(back, code);
    assert!(BinaryCode::parse("3 1\n111\nH\n110\n").is_err());
    assert!(BinaryCode::parse("3 1\n1111\n").is_err());
}

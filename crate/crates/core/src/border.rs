//! Border of a code, its reduced form, and test sets of codewords.
//!
//! The border collects every one-step departure `leader + e_j` from the
//! transversal that lands outside it, paired with the leader of the coset
//! it lands in. Head and tail of a border element always differ by a
//! codeword. Keeping only the support-minimal heads gives the reduced
//! border, and the codewords it induces form a test set.

use std::collections::BTreeSet;
use std::fmt;

use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::gf2::BitWord;
use crate::par::{self, Exec};
use crate::representation::{CosetTable, GroebnerRepresentation};

/// A pair `(head, tail)` of distinct words in the same coset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BorderElement {
    pub head: BitWord,
    pub tail: BitWord,
}

impl BorderElement {
    /// `head + tail`, a codeword.
    pub fn codeword(&self) -> BitWord {
        self.head ^ self.tail
    }
}

impl fmt::Display for BorderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.head, self.tail)
    }
}

/// Border elements ordered by head (in `≺`), then tail.
pub type Border = BTreeSet<BorderElement>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestSetKind {
    /// All minimal codewords of the code.
    MinimalAll,
    /// Codewords induced by the reduced border.
    MinRed,
    Custom,
}

/// A set of distinct nonzero codewords, kept sorted in `≺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSet {
    words: Vec<BitWord>,
    kind: TestSetKind,
}

impl TestSet {
    /// Validates membership in `code`, drops duplicates and rejects zero.
    pub fn new(
        code: &BinaryCode,
        words: impl IntoIterator<Item = BitWord>,
        kind: TestSetKind,
    ) -> Result<Self> {
        let set: BTreeSet<BitWord> = words.into_iter().collect();
        for w in &set {
            if !code.contains(w) {
                return Err(Error::InvalidParameter(format!("{w} is not a codeword")));
            }
            if w.is_zero() {
                return Err(Error::InvalidParameter(
                    "test sets exclude the zero word".into(),
                ));
            }
        }
        Ok(TestSet {
            words: set.into_iter().collect(),
            kind,
        })
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    pub fn kind(&self) -> TestSetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &BitWord) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn is_subset_of(&self, other: &TestSet) -> bool {
        self.words.iter().all(|w| other.contains(w))
    }

    /// Smallest weight in the set.
    pub fn min_weight(&self) -> Option<u32> {
        self.words.first().map(BitWord::weight)
    }
}

/// The border read off the transition table: `(leader_i + e_j, leader_{phi[i][j]})`
/// for all `i, j`, without the pairs whose components coincide.
pub fn border_from_phi(rep: &GroebnerRepresentation) -> Border {
    border_from_phi_with(rep, Exec::default())
}

pub fn border_from_phi_with(rep: &GroebnerRepresentation, exec: Exec) -> Border {
    let n = rep.n();
    let cosets = rep.num_cosets() as u64;
    par::chunked_reduce(
        exec,
        cosets,
        256,
        |start, end| {
            let mut part = Vec::new();
            for i in start as usize..end as usize {
                let leader = rep.leader(i);
                for j in 0..n {
                    let head = leader.with_flipped(j);
                    let tail = rep.leader(rep.phi(i, j));
                    if head != tail {
                        part.push(BorderElement { head, tail });
                    }
                }
            }
            part
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )
    .unwrap_or_default()
    .into_iter()
    .collect()
}

/// Largest `|N|^2 * n` accepted by [`border_by_definition`].
pub const DEFINITION_SCAN_LIMIT: u64 = 1 << 34;

/// The border by its defining condition: all `(n1 + e_i, n2)` with
/// `n1, n2` in the transversal, `n1 + e_i != n2` and equal syndromes.
///
/// Scans every triple, so it is only meant for small tables.
pub fn border_by_definition(code: &BinaryCode, transversal: &[BitWord]) -> Result<Border> {
    let n = code.n();
    let size = transversal.len() as u64;
    if size.saturating_mul(size).saturating_mul(n as u64) > DEFINITION_SCAN_LIMIT {
        return Err(Error::ScaleGuard(format!(
            "definition scan over {size} representatives is too large"
        )));
    }
    let syndromes: Vec<u64> = transversal
        .iter()
        .map(|w| code.syndrome(w).map(|s| s.word().bits()))
        .collect::<Result<_>>()?;
    let found = par::chunked_reduce(
        Exec::default(),
        size,
        16,
        |start, end| {
            let mut part = Vec::new();
            for a in start as usize..end as usize {
                for i in 0..n {
                    let head = transversal[a].with_flipped(i);
                    let s = syndromes[a] ^ code.column(i).word().bits();
                    for (b, &tail) in transversal.iter().enumerate() {
                        if head != tail && syndromes[b] == s {
                            part.push(BorderElement { head, tail });
                        }
                    }
                }
            }
            part
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    Ok(found.unwrap_or_default().into_iter().collect())
}

/// Keeps exactly the elements whose heads are support-minimal among all heads.
pub fn reduce_border(border: &Border) -> Border {
    reduce_border_with(border, Exec::default())
}

pub fn reduce_border_with(border: &Border, exec: Exec) -> Border {
    let mut by_weight: Vec<&BorderElement> = border.iter().collect();
    by_weight.sort_by_key(|b| b.head.weight());
    let mut kept_heads: Vec<u64> = Vec::new();
    let mut reduced = Border::new();
    let mut start = 0;
    while start < by_weight.len() {
        let wt = by_weight[start].head.weight();
        let end = start
            + by_weight[start..]
                .iter()
                .take_while(|b| b.head.weight() == wt)
                .count();
        let layer = &by_weight[start..end];
        // Equal-weight heads cannot strictly contain each other, so each
        // layer only needs the minimal heads of lighter layers.
        let keep = par::map_indexed(exec, layer.len(), |i| {
            let h = layer[i].head.bits();
            !kept_heads.iter().any(|&k| k & !h == 0 && k != h)
        });
        let mut layer_heads = Vec::new();
        for (b, keep) in layer.iter().zip(keep) {
            if keep {
                reduced.insert(**b);
                layer_heads.push(b.head.bits());
            }
        }
        layer_heads.dedup();
        kept_heads.extend(layer_heads);
        start = end;
    }
    reduced
}

/// Checks the two defining conditions of a reduced border against the full border.
///
/// Returns a description of the first violation found.
pub fn check_reduced_conditions(
    border: &Border,
    reduced: &Border,
) -> std::result::Result<(), String> {
    if let Some(b) = reduced.iter().find(|b| !border.contains(b)) {
        return Err(format!("{b} is not a border element"));
    }
    let heads: BTreeSet<BitWord> = reduced.iter().map(|b| b.head).collect();
    for b in border {
        if !heads.iter().any(|h| h.is_subset_of(&b.head)) {
            return Err(format!(
                "border head {} has no retained head below it",
                b.head
            ));
        }
    }
    for a in &heads {
        for b in &heads {
            if a != b && a.is_subset_of(b) {
                return Err(format!("retained heads {a} and {b} are comparable"));
            }
        }
    }
    Ok(())
}

/// `{head + tail}` over the reduced border.
pub fn min_red(code: &BinaryCode, reduced: &Border) -> Result<TestSet> {
    TestSet::new(
        code,
        reduced.iter().map(BorderElement::codeword),
        TestSetKind::MinRed,
    )
}

/// Largest dimension accepted by [`minimal_codewords_bruteforce`] by default.
pub const MAX_ENUMERATION_DIM: usize = 16;

/// All minimal codewords, by enumerating the code and comparing supports pairwise.
pub fn minimal_codewords_bruteforce(code: &BinaryCode) -> Result<TestSet> {
    minimal_codewords_bruteforce_with(code, MAX_ENUMERATION_DIM, Exec::default())
}

pub fn minimal_codewords_bruteforce_with(
    code: &BinaryCode,
    max_k: usize,
    exec: Exec,
) -> Result<TestSet> {
    if code.k() > max_k {
        return Err(Error::ScaleGuard(format!(
            "enumerating 2^{} codewords exceeds 2^{max_k}",
            code.k()
        )));
    }
    let mut words: Vec<BitWord> = code.codewords().filter(|c| !c.is_zero()).collect();
    words.sort();
    let minimal = par::map_indexed(exec, words.len(), |i| {
        let c = words[i];
        // A proper sub-support has strictly smaller weight, so it sorts earlier.
        !words[..i]
            .iter()
            .any(|o| o.weight() < c.weight() && o.is_subset_of(&c))
    });
    let chosen = words
        .iter()
        .zip(minimal)
        .filter(|(_, m)| *m)
        .map(|(w, _)| *w);
    TestSet::new(code, chosen, TestSetKind::MinimalAll)
}

/// Outcome of checking that the reduced-border codewords are minimal codewords.
#[derive(Debug, Clone)]
pub struct Prop1Report {
    pub border_size: usize,
    pub reduced_size: usize,
    pub min_red: TestSet,
    pub minimal: TestSet,
    /// Reduced-border elements that mapped onto an already produced codeword.
    pub duplicates: usize,
    /// Elements of the reduced-border test set that are not minimal codewords.
    pub violations: Vec<BitWord>,
}

impl Prop1Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_proposition1(code: &BinaryCode) -> Result<Prop1Report> {
    verify_proposition1_with(code, Exec::default())
}

pub fn verify_proposition1_with(code: &BinaryCode, exec: Exec) -> Result<Prop1Report> {
    let minimal = minimal_codewords_bruteforce_with(code, MAX_ENUMERATION_DIM, exec)?;
    let rep = GroebnerRepresentation::build_with(code, Default::default(), exec)?;
    let border = border_from_phi_with(&rep, exec);
    let reduced = reduce_border_with(&border, exec);
    let min_red = min_red(code, &reduced)?;
    let violations = min_red
        .words()
        .iter()
        .filter(|w| !minimal.contains(w))
        .copied()
        .collect();
    Ok(Prop1Report {
        border_size: border.len(),
        reduced_size: reduced.len(),
        duplicates: reduced.len() - min_red.len(),
        min_red,
        minimal,
        violations,
    })
}

/// One element per line: `head tail`.
pub fn border_to_text(border: &Border) -> String {
    border.iter().map(|b| format!("{b}\n")).collect()
}

/// One codeword per line.
pub fn test_set_to_text(set: &TestSet) -> String {
    set.words().iter().map(|w| format!("{w}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes;
    use crate::gf2::Gf2Matrix;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn el(h: &str, t: &str) -> BorderElement {
        BorderElement {
            head: w(h),
            tail: w(t),
        }
    }

    #[test]
    fn trivial_code_border_is_units() {
        let code = BinaryCode::from_generator(Gf2Matrix::identity(3)).unwrap();
        let rep = GroebnerRepresentation::build(&code).unwrap();
        let border = border_from_phi(&rep);
        let expected: Border = [el("100", "000"), el("010", "000"), el("001", "000")].into();
        assert_eq!(border, expected);
    }

    #[test]
    fn repetition_border() {
        let code = codes::repetition(3).unwrap();
        let rep = GroebnerRepresentation::build(&code).unwrap();
        let border = border_from_phi(&rep);
        assert!(border.contains(&el("110", "001")));
        assert!(border.iter().all(|b| code.contains(&b.codeword())));
        let by_def = border_by_definition(&code, &rep.leaders().collect::<Vec<_>>()).unwrap();
        assert_eq!(by_def, border);
        let reduced = reduce_border(&border);
        check_reduced_conditions(&border, &reduced).unwrap();
        let t = min_red(&code, &reduced).unwrap();
        assert_eq!(t.words(), &[w("111")]);
        assert_eq!(
            minimal_codewords_bruteforce(&code).unwrap().words(),
            &[w("111")]
        );
    }

    #[test]
    fn reduce_drops_supersets() {
        let border: Border = [el("1100", "0001"), el("1110", "0001"), el("0011", "1000")].into();
        let reduced = reduce_border(&border);
        let expected: Border = [el("1100", "0001"), el("0011", "1000")].into();
        assert_eq!(reduced, expected);
        check_reduced_conditions(&border, &reduced).unwrap();

        let incomparable: Border = [el("1100", "0001"), el("0011", "1000")].into();
        assert_eq!(reduce_border(&incomparable), incomparable);
    }

    #[test]
    fn hamming_minimal_codewords() {
        let code = codes::hamming(3).unwrap();
        let m = minimal_codewords_bruteforce(&code).unwrap();
        assert_eq!(m.len(), 14);
        assert!(m.words().iter().all(|c| c.weight() == 3 || c.weight() == 4));
        assert!(!m.contains(&BitWord::ones(7)));

        let report = verify_proposition1(&code).unwrap();
        assert!(report.holds());
        assert!(report.min_red.is_subset_of(&m));
    }

    #[test]
    fn hamming_reduced_heads_weight_two() {
        let rep = GroebnerRepresentation::build(&codes::hamming(3).unwrap()).unwrap();
        let reduced = reduce_border(&border_from_phi(&rep));
        assert!(!reduced.is_empty());
        assert!(reduced.iter().all(|b| b.head.weight() == 2));
    }

    #[test]
    fn test_set_validation() {
        let code = codes::repetition(3).unwrap();
        assert!(TestSet::new(&code, [w("110")], TestSetKind::Custom).is_err());
        assert!(TestSet::new(&code, [w("000")], TestSetKind::Custom).is_err());
        let t = TestSet::new(&code, [w("111"), w("111")], TestSetKind::Custom).unwrap();
        assert_eq!(t.len(), 1);
    }
}

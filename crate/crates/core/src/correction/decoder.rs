//! Lookup-table decoding for all errors up to a fixed weight.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::enumerate::{error_from_terms, SyndromeMap};
use crate::code::EacqCode;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, SympVec};
use crate::pauli::PauliOp;

/// Map from syndrome to a minimum-weight recovery covering every error of weight `≤ t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeTable {
    fingerprint: String,
    n: usize,
    syndrome_bits: usize,
    t: usize,
    entries: BTreeMap<BitVec, PauliOp>,
}

struct Slot {
    recovery: SympVec,
    class: Vec<u64>,
}

/// Builds the table, failing with a witness pair if the weight `≤ t` errors are not a
/// correctable set. Ties go to the lower weight, then the lexicographically smaller `(z|x)`.
pub fn build_decoder(code: &EacqCode, t: usize) -> Result<DecodeTable> {
    let n = code.n();
    if t > n {
        return Err(Error::InvalidArgument(format!(
            "table weight {t} exceeds n = {n}"
        )));
    }
    let map = SyndromeMap::new(code);
    let bits = map.bits();
    let mut slots: BTreeMap<BitVec, Slot> = BTreeMap::new();
    let mut failure: Option<Error> = None;
    for w in 0..=t {
        map.walk(w, &mut |terms, syn| {
            if failure.is_some() {
                return;
            }
            let e = error_from_terms(n, terms);
            let key = BitVec::from_bools((0..bits).map(|j| syn[j / 64] >> (j % 64) & 1 == 1));
            let class = code.radical_class(&e);
            match slots.entry(key) {
                Entry::Vacant(v) => {
                    v.insert(Slot { recovery: e, class });
                }
                Entry::Occupied(mut o) => {
                    let slot = o.get_mut();
                    if slot.class != class {
                        failure = Some(Error::Uncorrectable(slot.recovery.clone(), e));
                    } else if e
                        .weight()
                        .cmp(&slot.recovery.weight())
                        .then_with(|| e.lex_cmp(&slot.recovery))
                        == Ordering::Less
                    {
                        slot.recovery = e;
                    }
                }
            }
        });
    }
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(DecodeTable {
        fingerprint: code.fingerprint(),
        n,
        syndrome_bits: bits,
        t,
        entries: slots
            .into_iter()
            .map(|(k, s)| (k, PauliOp::from_symplectic(s.recovery)))
            .collect(),
    })
}

const HEADER: &str = "eacq-table v1";

impl DecodeTable {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Fingerprint of the code the table was built for.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn recovery(&self, syndrome: &BitVec) -> Option<&PauliOp> {
        self.entries.get(syndrome)
    }

    /// Entries in syndrome order.
    pub fn entries(&self) -> impl Iterator<Item = (&BitVec, &PauliOp)> {
        self.entries.iter()
    }

    pub fn matches(&self, code: &EacqCode) -> bool {
        self.fingerprint == code.fingerprint()
    }

    /// ```text
    /// eacq-table v1
    /// code <fingerprint>
    /// n <n>  t <t>  bits <syndrome length>
    /// <syndrome bits> <pauli string>
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "code {}", self.fingerprint);
        let _ = writeln!(
            out,
            "n {}  t {}  bits {}",
            self.n, self.t, self.syndrome_bits
        );
        for (s, r) in &self.entries {
            let syn = if self.syndrome_bits == 0 {
                "-".to_string()
            } else {
                s.to_string()
            };
            let _ = writeln!(out, "{syn} {r}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, HEADER)) => {}
            Some((ln, _)) => return Err(err(ln, "expected header 'eacq-table v1'")),
            None => return Err(err(1, "empty table file")),
        }
        let (ln, code_line) = lines.next().ok_or_else(|| err(2, "missing code line"))?;
        let fingerprint = code_line
            .strip_prefix("code ")
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .ok_or_else(|| err(ln, "expected 'code <fingerprint>'"))?
            .to_string();
        let (ln, dims) = lines
            .next()
            .ok_or_else(|| err(ln + 1, "missing dimension line"))?;
        let toks: Vec<&str> = dims.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "n" || toks[2] != "t" || toks[4] != "bits" {
            return Err(err(ln, "expected 'n <int>  t <int>  bits <int>'"));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(ln, "dimension must be a nonnegative integer"))
        };
        let (n, t, bits) = (num(toks[1])?, num(toks[3])?, num(toks[5])?);

        let mut entries = BTreeMap::new();
        for (ln, line) in lines {
            let (syn, pauli) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(ln, "expected '<syndrome> <pauli>'"))?;
            let syn = if syn == "-" && bits == 0 {
                BitVec::zeros(0)
            } else {
                syn.parse::<BitVec>()
                    .map_err(|e| err(ln, &format!("bad syndrome: {e}")))?
            };
            if syn.len() != bits {
                return Err(err(ln, &format!("syndrome must have {bits} bits")));
            }
            let op: PauliOp = pauli
                .trim()
                .parse()
                .map_err(|e| err(ln, &format!("bad recovery: {e}")))?;
            if op.n() != n {
                return Err(err(ln, &format!("recovery must act on {n} qubits")));
            }
            if op.weight() > t {
                return Err(err(ln, &format!("recovery weight exceeds t = {t}")));
            }
            if entries.insert(syn, op).is_some() {
                return Err(err(ln, "duplicate syndrome"));
            }
        }
        Ok(Self {
            fingerprint,
            n,
            syndrome_bits: bits,
            t,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::correction::enumerate::errors_up_to;
    use crate::correction::{classify_pair, syndrome, ErrorClass};

    #[test]
    fn shor_table() {
        let code = catalog::shor_code();
        let table = build_decoder(&code, 1).unwrap();
        assert!(table.len() <= 28);
        // Z errors within a triplet share one recovery.
        assert_eq!(table.len(), 28 - 6);
        for (s, r) in table.entries() {
            assert_eq!(&syndrome(&code, r.symplectic()).unwrap(), s);
            assert!(r.weight() <= 1);
        }
    }

    #[test]
    fn table_of_weight_zero() {
        let code = catalog::eacq_9_1_3().code;
        let table = build_decoder(&code, 0).unwrap();
        assert_eq!(table.len(), 1);
        let (s, r) = table.entries().next().unwrap();
        assert!(s.is_zero());
        assert!(r.is_identity());
    }

    #[test]
    fn recoveries_are_equivalent_to_errors() {
        for named in [catalog::shor_9_1_3(), catalog::eaqecc_8_1_3_1()] {
            let code = named.code;
            let table = build_decoder(&code, 1).unwrap();
            for e in errors_up_to(code.n(), 1) {
                let r = table.recovery(&syndrome(&code, &e).unwrap()).unwrap();
                let class = classify_pair(&code, &e, r.symplectic()).unwrap();
                assert!(
                    matches!(
                        class,
                        ErrorClass::DegenerateQuantum | ErrorClass::DegenerateClassical
                    ),
                    "{}: {e} -> {r}",
                    named.name
                );
            }
        }
    }

    #[test]
    fn uncorrectable_tables_are_rejected() {
        for (code, t) in [
            (catalog::shor_code(), 2),
            (catalog::eacq_9_1_3().code, 1),
            (catalog::eacq_8_1_3_1().code, 1),
        ] {
            match build_decoder(&code, t) {
                Err(Error::Uncorrectable(a, b)) => {
                    assert_eq!(
                        classify_pair(&code, &a, &b).unwrap(),
                        ErrorClass::Uncorrectable
                    );
                    assert!(a.weight() <= t && b.weight() <= t);
                }
                other => panic!("expected an uncorrectable pair, got {other:?}"),
            }
        }
    }

    #[test]
    fn ties_prefer_lexicographically_smaller() {
        let code = catalog::shor_code();
        let table = build_decoder(&code, 1).unwrap();
        let z1: SympVec = "100000000|000000000".parse().unwrap();
        let r = table.recovery(&syndrome(&code, &z1).unwrap()).unwrap();
        // Z₃ reads 001000000, the smallest string among Z₁, Z₂, Z₃.
        assert_eq!(r.to_string(), "IIZIIIIII");
    }

    #[test]
    fn text_round_trip_and_errors() {
        let code = catalog::eaqecc_8_1_3_1().code;
        let table = build_decoder(&code, 1).unwrap();
        let text = table.to_text();
        assert!(text.starts_with("eacq-table v1\ncode "));
        let back = DecodeTable::from_text(&text).unwrap();
        assert_eq!(back, table);
        assert!(back.matches(&code));
        assert!(!back.matches(&catalog::shor_code()));

        let bad = text.replacen("eacq-table v1", "eacq-table v0", 1);
        assert!(matches!(
            DecodeTable::from_text(&bad),
            Err(Error::Parse { line: 1, .. })
        ));
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[4] = format!("{} XXIIIIII", lines[4].split(' ').next().unwrap());
        let err = DecodeTable::from_text(&lines.join("\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err}");
    }
}

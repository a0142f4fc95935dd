use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::nfa::{Nfa, NfaBuilder};
use crate::observer::ObservationMap;
use crate::opacity::{CsoQuery, IfoQuery, InsoQuery, IsoQuery, KsoQuery};
use crate::reductions::CsoInstance;
use crate::stateset::StateSet;

const SECTIONS: [&str; 12] = [
    "states",
    "alphabet",
    "unobservable",
    "initial",
    "accepting",
    "secret-states",
    "nonsecret-states",
    "secret-initial",
    "nonsecret-initial",
    "secret-pairs",
    "nonsecret-pairs",
    "trans",
];

/// An automaton plus the opacity annotations a document may carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfaDocument {
    pub nfa: Nfa,
    pub omap: ObservationMap,
    pub secret: Option<StateSet>,
    pub nonsecret: Option<StateSet>,
    pub secret_initial: Option<StateSet>,
    pub nonsecret_initial: Option<StateSet>,
    pub secret_pairs: Option<Vec<(usize, usize)>>,
    pub nonsecret_pairs: Option<Vec<(usize, usize)>>,
}

impl NfaDocument {
    pub fn new(nfa: Nfa) -> Self {
        let omap = ObservationMap::all_observable(&nfa);
        NfaDocument {
            nfa,
            omap,
            secret: None,
            nonsecret: None,
            secret_initial: None,
            nonsecret_initial: None,
            secret_pairs: None,
            nonsecret_pairs: None,
        }
    }

    pub fn from_cso(inst: &CsoInstance) -> Self {
        NfaDocument {
            omap: inst.omap.clone(),
            secret: Some(inst.secret.clone()),
            nonsecret: Some(inst.nonsecret.clone()),
            ..NfaDocument::new(inst.nfa.clone())
        }
    }

    fn require<'a, T>(field: &'a Option<T>, section: &str) -> Result<&'a T> {
        field
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("document has no `{section}:` section")))
    }

    /// Secret states, and non-secret states defaulting to all other states.
    fn state_split(&self) -> Result<(StateSet, StateSet)> {
        let secret = Self::require(&self.secret, "secret-states")?.clone();
        let nonsecret = match &self.nonsecret {
            Some(ns) => ns.clone(),
            None => self.nfa.all_states().difference(&secret),
        };
        Ok((secret, nonsecret))
    }

    pub fn cso_query(&self) -> Result<CsoQuery> {
        let (secret, nonsecret) = self.state_split()?;
        Ok(CsoQuery { secret, nonsecret })
    }

    pub fn kso_query(&self, k: usize) -> Result<KsoQuery> {
        let (secret, nonsecret) = self.state_split()?;
        Ok(KsoQuery {
            secret,
            nonsecret,
            k,
        })
    }

    pub fn inso_query(&self) -> Result<InsoQuery> {
        let (secret, nonsecret) = self.state_split()?;
        Ok(InsoQuery { secret, nonsecret })
    }

    /// `nonsecret-initial` defaults to the remaining initial states.
    pub fn iso_query(&self) -> Result<IsoQuery> {
        let secret_initial = Self::require(&self.secret_initial, "secret-initial")?.clone();
        let nonsecret_initial = match &self.nonsecret_initial {
            Some(ns) => ns.clone(),
            None => self.nfa.initial().difference(&secret_initial),
        };
        Ok(IsoQuery {
            secret_initial,
            nonsecret_initial,
        })
    }

    /// `nonsecret-pairs` defaults to the rest of `I × F`.
    pub fn ifo_query(&self) -> Result<IfoQuery> {
        let secret_pairs = Self::require(&self.secret_pairs, "secret-pairs")?.clone();
        let nonsecret_pairs = match &self.nonsecret_pairs {
            Some(ns) => ns.clone(),
            None => {
                let nfa = &self.nfa;
                nfa.initial()
                    .iter()
                    .flat_map(|i| nfa.accepting().iter().map(move |f| (i, f)))
                    .filter(|p| !secret_pairs.contains(p))
                    .collect()
            }
        };
        Ok(IfoQuery {
            secret_pairs,
            nonsecret_pairs,
        })
    }
}

struct Section {
    line: usize,
    tokens: Vec<String>,
}

fn directive(line: &str) -> Option<(&str, &str)> {
    let (head, rest) = line.split_once(':')?;
    let head = head.trim();
    let is_name = !head.is_empty()
        && head.chars().all(|c| c.is_ascii_lowercase() || c == '-')
        && !head.contains(char::is_whitespace);
    is_name.then_some((head, rest))
}

/// Parses an NFA document.
///
/// Each section is a line `name: tokens...`; after `trans:` every line up to
/// the next section is a `source symbol target` triple. `#` starts a comment.
/// `states:` and `alphabet:` are required; the other sections are optional.
pub fn parse_nfa(text: &str) -> Result<NfaDocument> {
    let mut sections: HashMap<&'static str, Section> = HashMap::new();
    let mut triples: Vec<(usize, Vec<String>)> = Vec::new();
    let mut in_trans = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = super::strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some((name, rest)) = directive(line) {
            let Some(&key) = SECTIONS.iter().find(|&&s| s == name) else {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive `{name}:`"),
                ));
            };
            if sections.contains_key(key) {
                return Err(Error::parse(line_no, format!("duplicate section `{key}:`")));
            }
            let tokens: Vec<String> = rest.split_whitespace().map(String::from).collect();
            in_trans = key == "trans";
            if in_trans && !tokens.is_empty() {
                return Err(Error::parse(
                    line_no,
                    "`trans:` takes no values on its own line",
                ));
            }
            sections.insert(
                key,
                Section {
                    line: line_no,
                    tokens,
                },
            );
            continue;
        }
        if !in_trans {
            return Err(Error::parse(
                line_no,
                format!("expected a section, found `{line}`"),
            ));
        }
        let parts: Vec<String> = line.split_whitespace().map(String::from).collect();
        if parts.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("malformed transition `{line}`: expected `source symbol target`"),
            ));
        }
        triples.push((line_no, parts));
    }

    let required = |name: &str| {
        sections
            .get(name)
            .ok_or_else(|| Error::parse(1, format!("missing `{name}:` section")))
    };
    let mut b = NfaBuilder::new();
    let states = required("states")?;
    for name in &states.tokens {
        b.add_state(name)
            .map_err(|e| Error::parse(states.line, e.to_string()))?;
    }
    let alphabet = required("alphabet")?;
    for name in &alphabet.tokens {
        b.add_symbol(name)
            .map_err(|e| Error::parse(alphabet.line, e.to_string()))?;
    }
    let state_names: HashMap<&str, usize> = states
        .tokens
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let symbol_names: HashMap<&str, usize> = alphabet
        .tokens
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let state = |name: &str, line: usize| {
        state_names
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(line, format!("undeclared state `{name}`")))
    };
    let symbol = |name: &str, line: usize| {
        symbol_names
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(line, format!("undeclared symbol `{name}`")))
    };

    for (line, t) in &triples {
        let (p, a, q) = (
            state(&t[0], *line)?,
            symbol(&t[1], *line)?,
            state(&t[2], *line)?,
        );
        b.add_transition(p, a, q);
    }
    let n = states.tokens.len();
    let set = |name: &str| -> Result<Option<(StateSet, usize)>> {
        let Some(sec) = sections.get(name) else {
            return Ok(None);
        };
        let mut s = StateSet::empty(n);
        for t in &sec.tokens {
            s.insert(state(t, sec.line)?);
        }
        Ok(Some((s, sec.line)))
    };
    if let Some((init, _)) = set("initial")? {
        for q in &init {
            b.add_initial(q);
        }
    }
    if let Some((acc, _)) = set("accepting")? {
        for q in &acc {
            b.add_accepting(q);
        }
    }
    let nfa = b.build()?;

    let mut observable = vec![true; nfa.num_symbols()];
    if let Some(sec) = sections.get("unobservable") {
        for t in &sec.tokens {
            observable[symbol(t, sec.line)?] = false;
        }
    }

    let split =
        |a: &str, b: &str, what: &'static str| -> Result<(Option<StateSet>, Option<StateSet>)> {
            let (x, y) = (set(a)?, set(b)?);
            if let (Some((x, lx)), Some((y, ly))) = (&x, &y) {
                if x.intersects(y) {
                    return Err(Error::parse((*lx).max(*ly), format!("{what} sets overlap")));
                }
            }
            Ok((x.map(|v| v.0), y.map(|v| v.0)))
        };
    let (secret, nonsecret) = split(
        "secret-states",
        "nonsecret-states",
        "secret/non-secret state",
    )?;
    let (secret_initial, nonsecret_initial) = split(
        "secret-initial",
        "nonsecret-initial",
        "secret/non-secret initial",
    )?;

    type Pairs = Vec<(usize, usize)>;
    let pairs = |name: &str| -> Result<Option<(Pairs, usize)>> {
        let Some(sec) = sections.get(name) else {
            return Ok(None);
        };
        let mut out = Vec::new();
        for t in &sec.tokens {
            let Some((p, f)) = t.split_once(':') else {
                return Err(Error::parse(
                    sec.line,
                    format!("expected `state:state`, found `{t}`"),
                ));
            };
            let pair = (state(p, sec.line)?, state(f, sec.line)?);
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
        Ok(Some((out, sec.line)))
    };
    let (sp, nsp) = (pairs("secret-pairs")?, pairs("nonsecret-pairs")?);
    if let (Some((x, lx)), Some((y, ly))) = (&sp, &nsp) {
        if x.iter().any(|p| y.contains(p)) {
            return Err(Error::parse(
                (*lx).max(*ly),
                "secret/non-secret pair sets overlap",
            ));
        }
    }

    Ok(NfaDocument {
        omap: ObservationMap::from_flags(observable),
        nfa,
        secret,
        nonsecret,
        secret_initial,
        nonsecret_initial,
        secret_pairs: sp.map(|v| v.0),
        nonsecret_pairs: nsp.map(|v| v.0),
    })
}

/// Writes a document that [`parse_nfa`] reads back to an equal value.
pub fn serialize_nfa(doc: &NfaDocument) -> String {
    let nfa = &doc.nfa;
    let mut out = String::new();
    let mut line = |name: &str, tokens: &mut dyn Iterator<Item = String>| {
        out.push_str(name);
        out.push(':');
        for t in tokens {
            out.push(' ');
            out.push_str(&t);
        }
        out.push('\n');
    };
    let names =
        |s: &StateSet| -> Vec<String> { s.iter().map(|q| nfa.state_name(q).to_string()).collect() };
    line("states", &mut nfa.states().names().iter().cloned());
    line("alphabet", &mut nfa.symbols().names().iter().cloned());
    let hidden = doc.omap.unobservable_symbols();
    if !hidden.is_empty() {
        line(
            "unobservable",
            &mut hidden.iter().map(|&a| nfa.symbol_name(a).to_string()),
        );
    }
    line("initial", &mut names(nfa.initial()).into_iter());
    line("accepting", &mut names(nfa.accepting()).into_iter());
    let sets = [
        ("secret-states", &doc.secret),
        ("nonsecret-states", &doc.nonsecret),
        ("secret-initial", &doc.secret_initial),
        ("nonsecret-initial", &doc.nonsecret_initial),
    ];
    for (name, s) in sets {
        if let Some(s) = s {
            line(name, &mut names(s).into_iter());
        }
    }
    for (name, pairs) in [
        ("secret-pairs", &doc.secret_pairs),
        ("nonsecret-pairs", &doc.nonsecret_pairs),
    ] {
        if let Some(pairs) = pairs {
            line(
                name,
                &mut pairs
                    .iter()
                    .map(|&(p, f)| format!("{}:{}", nfa.state_name(p), nfa.state_name(f))),
            );
        }
    }
    out.push_str("trans:\n");
    for (p, a, q) in nfa.transitions() {
        let _ = writeln!(
            out,
            "{} {} {}",
            nfa.state_name(p),
            nfa.symbol_name(a),
            nfa.state_name(q)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "states: q\nalphabet: a\ninitial: q\naccepting: q\ntrans:\nq a q\n";

    #[test]
    fn minimal_round_trip() {
        let doc = parse_nfa(MINIMAL).unwrap();
        assert_eq!(doc.nfa.num_states(), 1);
        assert_eq!(doc.nfa.num_transitions(), 1);
        assert_eq!(serialize_nfa(&doc), MINIMAL);
        assert_eq!(parse_nfa(&serialize_nfa(&doc)).unwrap(), doc);
    }

    #[test]
    fn annotations() {
        let text = "\
# two states
states: s n
alphabet: a u
unobservable: u
initial: s n   # both
accepting: n
secret-states: s
nonsecret-states: n
secret-initial: s
secret-pairs: s:n
trans:
s a n
s u n
";
        let doc = parse_nfa(text).unwrap();
        assert!(!doc.omap.is_observable(1));
        assert_eq!(doc.secret, Some(doc.nfa.set_of([0])));
        assert_eq!(
            doc.iso_query().unwrap().nonsecret_initial,
            doc.nfa.set_of([1])
        );
        assert_eq!(doc.ifo_query().unwrap().nonsecret_pairs, vec![(1, 1)]);
        assert_eq!(parse_nfa(&serialize_nfa(&doc)).unwrap(), doc);
    }

    #[test]
    fn errors_name_the_line() {
        let bad = "states: q\nalphabet: a\ntrans:\nq a\n";
        assert!(matches!(parse_nfa(bad), Err(Error::Parse { line: 4, .. })));
        let undeclared = "states: q\nalphabet: a\ntrans:\nq b q\n";
        assert!(matches!(
            parse_nfa(undeclared),
            Err(Error::Parse { line: 4, .. })
        ));
        let unknown = "states: q\nalphabet: a\nfinal: q\n";
        assert!(matches!(
            parse_nfa(unknown),
            Err(Error::Parse { line: 3, .. })
        ));
        let dup = "states: q\nalphabet: a\nstates: r\n";
        assert!(matches!(parse_nfa(dup), Err(Error::Parse { line: 3, .. })));
        let overlap = "states: q r\nalphabet: a\nsecret-states: q\nnonsecret-states: q r\n";
        assert!(matches!(
            parse_nfa(overlap),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(parse_nfa("alphabet: a\n").is_err());
    }
}

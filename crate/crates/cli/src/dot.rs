//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write;

use thuemult::automata::{Dfa, PairAlphabetCodec};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per state; parallel edges are merged with comma-separated
/// letters. With a pair codec, letters print as `(d,e)`.
pub fn to_dot(a: &Dfa, pairs: Option<PairAlphabetCodec>) -> String {
    let mut out = String::new();
    out.push_str("digraph automaton {\n  rankdir=LR;\n");
    for q in 0..a.state_count() {
        let label = a.label(q).map(str::to_string).unwrap_or_else(|| q.to_string());
        let shape = if a.is_final(q) { "doublecircle" } else { "circle" };
        let style = if q == a.initial() { ", style=bold" } else { "" };
        writeln!(out, "  q{q} [label=\"{}\", shape={shape}{style}];", escape(&label)).unwrap();
    }
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (s, letter, t) in a.transitions() {
        let text = match pairs {
            Some(codec) => {
                let (d, e) = codec.decode(letter);
                format!("({d},{e})")
            }
            None => letter.to_string(),
        };
        edges.entry((s, t)).or_default().push(text);
    }
    for ((s, t), letters) in edges {
        writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", letters.join(",")).unwrap();
    }
    out.push_str("}\n");
    out
}

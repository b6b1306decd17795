//! Graphviz export.

use std::fmt::Write;

use crate::system::SynchronousSystem;

fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per state labelled `name / out`, the initial state double
/// circled, one edge per transition; everything in declaration order.
pub fn export_dot(sys: &SynchronousSystem) -> String {
    let mut text = String::new();
    writeln!(text, "digraph {} {{", quote(sys.name())).unwrap();
    writeln!(text, "  rankdir=LR;").unwrap();
    for q in sys.states() {
        let shape = if q == sys.initial() { "doublecircle" } else { "circle" };
        let label = format!("{} / {}", sys.state_name(q), sys.out_symbol(q));
        writeln!(
            text,
            "  {} [shape={shape}, label={}];",
            quote(sys.state_name(q)),
            quote(&label)
        )
        .unwrap();
    }
    for &(p, a, q) in sys.transitions() {
        writeln!(
            text,
            "  {} -> {} [label={}];",
            quote(sys.state_name(p)),
            quote(sys.state_name(q)),
            quote(sys.input_symbol(a).as_str())
        )
        .unwrap();
    }
    text.push_str("}\n");
    text
}

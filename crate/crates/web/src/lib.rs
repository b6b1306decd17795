//! Browser bindings: compile a program, analyse a state, list separators.
//!
//! The `*_text` functions hold the logic and run natively; the exported
//! wrappers only convert errors into JavaScript exceptions.

use std::f64::consts::PI;
use std::fmt::Write as _;

use reactime_core::abstraction::{doe, format_pair_sets, ssp_seq};
use reactime_core::effect::format_effects;
use reactime_core::psyc::{build_lts, parse_program, BuildOptions};
use reactime_core::reactivity::{det_reaction_time, separating_pairs, separators};
use reactime_core::{report, sls, SynchronousSystem};
use wasm_bindgen::prelude::*;

/// Upper bound on states built in the page.
pub const MAX_STATES: usize = 2000;

/// Upper bound on separator length searched in the page.
pub const MAX_SEPARATOR_LEN: usize = 8;

fn load(text: &str) -> Result<SynchronousSystem, String> {
    let sys = sls::parse(text).map_err(|e| e.to_string())?;
    match sys.validate().first() {
        Some(v) => Err(format!("incomplete: {v}")),
        None => Ok(sys),
    }
}

/// Compiles a program into `.sls` text.
pub fn build_text(program: &str) -> Result<String, String> {
    let p = parse_program(program).map_err(|e| e.to_string())?;
    let options = BuildOptions {
        max_states: MAX_STATES,
        ..BuildOptions::default()
    };
    let sys = build_lts(&p, &options).map_err(|e| e.to_string())?;
    Ok(sls::write(&sys))
}

/// Separating pairs, reaction time, effect abstraction and pair-set
/// sequence of one state, one report line each.
pub fn analyze_text(system: &str, state: &str) -> Result<String, String> {
    let sys = load(system)?;
    let q = sys.state(state).map_err(|e| e.to_string())?;
    let err = |e: reactime_core::Error| e.to_string();
    let mut out = String::new();
    for line in report::pair_lines(&sys, &separating_pairs(&sys, q).map_err(err)?) {
        writeln!(out, "{line}").unwrap();
    }
    let rt = det_reaction_time(&sys, q).map_err(err)?;
    writeln!(out, "{}", report::reaction_explanation(&sys, &rt)).unwrap();
    writeln!(out, "{}", report::reaction_line(&sys, &rt)).unwrap();
    writeln!(out, "doe {}", format_effects(&doe(&sys, q).map_err(err)?)).unwrap();
    let levels = ssp_seq(&sys, q).map_err(err)?;
    writeln!(out, "sspseq {}", format_pair_sets(&levels, sys.inputs())).unwrap();
    Ok(out)
}

/// Minimal separators of two states up to `max_len` inputs.
pub fn separators_text(system: &str, p: &str, q: &str, max_len: usize) -> Result<String, String> {
    let sys = load(system)?;
    let ids = |s: &str| sys.state(s).map_err(|e| e.to_string());
    let seps = separators(&sys, ids(p)?, &sys, ids(q)?, max_len.min(MAX_SEPARATOR_LEN)).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for s in &seps {
        writeln!(out, "{}", report::separator_line(&sys, s)).unwrap();
    }
    writeln!(out, "separators {}", seps.len()).unwrap();
    Ok(out)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// States on a circle, one labelled arc per (source, target) pair; the
/// initial state has a double ring.
pub fn svg_text(system: &str) -> Result<String, String> {
    let sys = load(system)?;
    let n = sys.num_states();
    let (size, radius, node) = (480.0, 180.0, 26.0);
    let centre = size / 2.0;
    let pos = |i: usize| {
        let angle = 2.0 * PI * i as f64 / n as f64 - PI / 2.0;
        if n == 1 {
            (centre, centre)
        } else {
            (centre + radius * angle.cos(), centre + radius * angle.sin())
        }
    };
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" font-family="monospace" font-size="11">"#
    )
    .unwrap();
    svg.push_str(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#,
    );
    let mut arcs: Vec<((usize, usize), Vec<String>)> = Vec::new();
    for &(p, a, q) in sys.transitions() {
        let key = (p.0, q.0);
        let label = sys.input_symbol(a).to_string();
        match arcs.iter_mut().find(|(k, _)| *k == key) {
            Some((_, labels)) => labels.push(label),
            None => arcs.push((key, vec![label])),
        }
    }
    for ((p, q), labels) in &arcs {
        let label = escape(&labels.join(" "));
        let (x1, y1) = pos(*p);
        if p == q {
            // loop drawn outward from the centre
            let (dx, dy) = if n == 1 {
                (0.0, -1.0)
            } else {
                ((x1 - centre) / radius, (y1 - centre) / radius)
            };
            let (bx, by) = (x1 + dx * node, y1 + dy * node);
            let (cx, cy) = (x1 + dx * 3.0 * node, y1 + dy * 3.0 * node);
            writeln!(
                svg,
                r#"<path d="M{:.1},{:.1} C{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}" fill="none" stroke="black" marker-end="url(#arrow)"/><text x="{:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#,
                bx - dy * 8.0, by + dx * 8.0,
                cx - dy * 30.0, cy + dx * 30.0,
                cx + dy * 30.0, cy - dx * 30.0,
                bx + dy * 8.0, by - dx * 8.0,
                x1 + dx * 3.2 * node, y1 + dy * 3.2 * node
            )
            .unwrap();
            continue;
        }
        let (x2, y2) = pos(*q);
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt();
        let (ux, uy) = (dx / len, dy / len);
        // opposite arcs bend to opposite sides
        let (mx, my) = ((x1 + x2) / 2.0 - uy * 24.0, (y1 + y2) / 2.0 + ux * 24.0);
        writeln!(
            svg,
            r#"<path d="M{:.1},{:.1} Q{mx:.1},{my:.1} {:.1},{:.1}" fill="none" stroke="black" marker-end="url(#arrow)"/><text x="{mx:.1}" y="{my:.1}" text-anchor="middle">{label}</text>"#,
            x1 + ux * node, y1 + uy * node,
            x2 - ux * node, y2 - uy * node
        )
        .unwrap();
    }
    for q in sys.states() {
        let (x, y) = pos(q.0);
        let label = format!(
            "{} / {}",
            escape(sys.state_name(q)),
            escape(&sys.out_symbol(q).to_string())
        );
        writeln!(
            svg,
            r#"<circle cx="{x:.1}" cy="{y:.1}" r="{node}" fill="white" stroke="black"/>"#
        )
        .unwrap();
        if q == sys.initial() {
            writeln!(
                svg,
                r#"<circle cx="{x:.1}" cy="{y:.1}" r="{}" fill="none" stroke="black"/>"#,
                node - 4.0
            )
            .unwrap();
        }
        writeln!(
            svg,
            r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#,
            y + 4.0
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn build_program(program: &str) -> Result<String, JsError> {
    js(build_text(program))
}

#[wasm_bindgen]
pub fn analyze(system: &str, state: &str) -> Result<String, JsError> {
    js(analyze_text(system, state))
}

#[wasm_bindgen(js_name = separators)]
pub fn list_separators(system: &str, p: &str, q: &str, max_len: usize) -> Result<String, JsError> {
    js(separators_text(system, p, q, max_len))
}

#[wasm_bindgen]
pub fn render_svg(system: &str) -> Result<String, JsError> {
    js(svg_text(system))
}

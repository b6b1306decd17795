//! Machine-readable report lines shared by the front ends.
//!
//! ```text
//! pair a1 a2 [det]
//! sep w... [det]
//! reactime finite T witness w...
//! reactime infinite
//! ```

use std::collections::BTreeSet;

use crate::effect::EffectSymbol;
use crate::reactivity::{NoReactionTime, ReactionTime, SepPairSet, Separator, StrongSeparation};
use crate::system::SynchronousSystem;

fn det(flag: bool) -> &'static str {
    if flag {
        " det"
    } else {
        ""
    }
}

fn spaced(sys: &SynchronousSystem, word: &[crate::InputId]) -> String {
    if word.is_empty() {
        String::new()
    } else {
        format!(" {}", sys.format_word(word))
    }
}

pub fn pair_lines(sys: &SynchronousSystem, pairs: &SepPairSet) -> Vec<String> {
    pairs
        .pairs
        .iter()
        .map(|p| {
            format!(
                "pair {} {}{}",
                sys.input_symbol(p.first),
                sys.input_symbol(p.second),
                det(p.deterministic)
            )
        })
        .collect()
}

/// The empty word prints as `sep` alone.
pub fn separator_line(sys: &SynchronousSystem, sep: &Separator) -> String {
    format!("sep{}{}", spaced(sys, &sep.word), det(sep.deterministic))
}

pub fn reaction_line(sys: &SynchronousSystem, rt: &ReactionTime) -> String {
    match rt {
        ReactionTime::Finite { steps, witness, .. } => {
            format!("reactime finite {steps} witness{}", spaced(sys, witness))
        }
        ReactionTime::Infinite(_) => "reactime infinite".into(),
    }
}

/// Human-readable explanation of a reaction time.
pub fn reaction_explanation(sys: &SynchronousSystem, rt: &ReactionTime) -> String {
    match rt {
        ReactionTime::Finite {
            steps,
            witness,
            pair,
            successors,
        } => format!(
            "after the separating pair ({}, {}), successors ({}, {}) differ for sure within {steps} step(s); \
             slowest word: {}",
            sys.input_symbol(pair.0),
            sys.input_symbol(pair.1),
            sys.state_name(successors.0),
            sys.state_name(successors.1),
            if witness.is_empty() {
                "ε".to_string()
            } else {
                sys.format_word(witness)
            }
        ),
        ReactionTime::Infinite(NoReactionTime::NoDeterministicSeparatingPair) => {
            "no deterministic separating pair".into()
        }
        ReactionTime::Infinite(NoReactionTime::NotStronglySeparable {
            pair,
            successors,
            stem,
            cycle,
        }) => format!(
            "after the separating pair ({}, {}), successors ({}, {}) show no difference on {}({})^ω",
            sys.input_symbol(pair.0),
            sys.input_symbol(pair.1),
            sys.state_name(successors.0),
            sys.state_name(successors.1),
            if stem.is_empty() {
                String::new()
            } else {
                format!("{} ", sys.format_word(stem))
            },
            sys.format_word(cycle)
        ),
    }
}

pub fn strong_separation_lines(sys: &SynchronousSystem, s: &StrongSeparation) -> Vec<String> {
    match s {
        StrongSeparation::Separable { bound, longest } => vec![
            format!("bound {bound}"),
            format!("longest{}", spaced(sys, longest)),
            "true".into(),
        ],
        StrongSeparation::NotSeparable { stem, cycle } => vec![
            format!("stem{}", spaced(sys, stem)),
            format!("cycle{}", spaced(sys, cycle)),
            "false".into(),
        ],
    }
}

/// `{* (x,y) ...}`
pub fn effect_set(set: &BTreeSet<EffectSymbol>) -> String {
    let items: Vec<String> = set.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(" "))
}

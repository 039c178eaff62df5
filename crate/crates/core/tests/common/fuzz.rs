//! Loader fuzzing: targeted corruptions with a known diagnostic, plus
//! random byte damage.
#![allow(dead_code)]

use tdroute::io::{
    generate, parse_graph, validate_text, write_graph, Draws, GeneratorConfig, LoadErrorKind,
};
use tdroute::model::{HorizonPolicy, ModelError, ProfileKind};

pub fn config(seed: u64, kind: ProfileKind, policy: HorizonPolicy) -> GeneratorConfig {
    GeneratorConfig {
        nodes: 2 + (seed % 20) as usize,
        avg_degree: 1.5,
        intervals: 1 + (seed % 9) as usize,
        horizon: 100.0 + seed as f64,
        kind,
        policy,
        seed,
        ..Default::default()
    }
}

/// One targeted corruption and the diagnostic it must produce.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Mutation {
    HeaderKeyword,
    HeaderVersion,
    BreakpointCount,
    NonIncreasing,
    NonZeroOrigin,
    NonPositiveSpeed,
    NonPositiveLength,
    ProfileLength,
    SelfLoop,
    NodeOutOfRange,
    DuplicateArc,
    ArcCount,
    InvalidNumber,
}

const MUTATIONS: [Mutation; 13] = [
    Mutation::HeaderKeyword,
    Mutation::HeaderVersion,
    Mutation::BreakpointCount,
    Mutation::NonIncreasing,
    Mutation::NonZeroOrigin,
    Mutation::NonPositiveSpeed,
    Mutation::NonPositiveLength,
    Mutation::ProfileLength,
    Mutation::SelfLoop,
    Mutation::NodeOutOfRange,
    Mutation::DuplicateArc,
    Mutation::ArcCount,
    Mutation::InvalidNumber,
];

fn tokens(line: &str) -> Vec<String> {
    line.split_whitespace().map(String::from).collect()
}

/// Applies `m` to a saved graph; returns the text and the 1-based line the
/// diagnostic must point at.
fn mutate(text: &str, m: Mutation, draws: &mut Draws) -> (String, usize) {
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let arc_lines = lines.len() - 4;
    let arc_line = 4 + draws.index(arc_lines.max(1));
    let mut target = arc_line + 1;
    let edit = |line: &mut String, f: &mut dyn FnMut(&mut Vec<String>)| {
        let mut t = tokens(line);
        f(&mut t);
        *line = t.join(" ");
    };
    match m {
        Mutation::HeaderKeyword => {
            edit(&mut lines[0], &mut |t| t[0] = "tdgrafo".into());
            target = 1;
        }
        Mutation::HeaderVersion => {
            edit(&mut lines[0], &mut |t| t[1] = "7".into());
            target = 1;
        }
        Mutation::BreakpointCount => {
            edit(&mut lines[1], &mut |t| {
                t.pop();
            });
            target = 2;
        }
        Mutation::NonIncreasing => {
            edit(&mut lines[1], &mut |t| {
                let last = t.len() - 1;
                t[last] = t[last - 1].clone();
            });
            target = 2;
        }
        Mutation::NonZeroOrigin => {
            edit(&mut lines[1], &mut |t| t[2] = "-1".into());
            target = 2;
        }
        Mutation::NonPositiveSpeed => {
            let which = draws.index(tokens(&lines[arc_line]).len() - 4);
            edit(&mut lines[arc_line], &mut |t| t[4 + which] = "0".into());
        }
        Mutation::NonPositiveLength => edit(&mut lines[arc_line], &mut |t| t[3] = "-3.5".into()),
        Mutation::ProfileLength => {
            let grow = draws.index(2) == 0;
            edit(&mut lines[arc_line], &mut |t| {
                if grow {
                    t.push("4.5".into())
                } else {
                    t.pop();
                }
            })
        }
        Mutation::SelfLoop => edit(&mut lines[arc_line], &mut |t| t[2] = t[1].clone()),
        Mutation::NodeOutOfRange => edit(&mut lines[arc_line], &mut |t| t[2] = "100000".into()),
        Mutation::DuplicateArc => {
            let copy = lines[4].clone();
            lines.insert(5, copy);
            edit(&mut lines[3], &mut |t| {
                let m: usize = t[1].parse().unwrap();
                t[1] = (m + 1).to_string();
            });
            target = 6;
        }
        Mutation::ArcCount => {
            edit(&mut lines[3], &mut |t| {
                let m: usize = t[1].parse().unwrap();
                t[1] = (m + 1).to_string();
            });
            target = lines.len();
        }
        Mutation::InvalidNumber => edit(&mut lines[arc_line], &mut |t| t[3] = "1,5".into()),
    }
    (lines.join("\n") + "\n", target)
}

fn expected(m: Mutation, kind: &LoadErrorKind) -> bool {
    use LoadErrorKind as K;
    match m {
        Mutation::HeaderKeyword | Mutation::HeaderVersion => matches!(kind, K::MalformedHeader(_)),
        Mutation::BreakpointCount => matches!(kind, K::BreakpointCount { .. }),
        Mutation::NonIncreasing => matches!(
            kind,
            K::Invalid(ModelError::NonIncreasingBreakpoints { .. })
        ),
        Mutation::NonZeroOrigin => matches!(kind, K::Invalid(ModelError::NonZeroOrigin(_))),
        Mutation::NonPositiveSpeed => {
            matches!(kind, K::Invalid(ModelError::NonPositiveSpeed { .. }))
        }
        Mutation::NonPositiveLength => matches!(kind, K::Invalid(ModelError::NonPositiveLength(_))),
        Mutation::ProfileLength => matches!(kind, K::Invalid(ModelError::ProfileLength { .. })),
        Mutation::SelfLoop => matches!(kind, K::Invalid(ModelError::SelfLoop(_))),
        Mutation::NodeOutOfRange => matches!(kind, K::Invalid(ModelError::NodeOutOfRange { .. })),
        Mutation::DuplicateArc => matches!(kind, K::Invalid(ModelError::DuplicateArc { .. })),
        Mutation::ArcCount => matches!(kind, K::ArcCount { .. }),
        Mutation::InvalidNumber => matches!(kind, K::InvalidNumber(_)),
    }
}

/// Runs `rounds` targeted mutations plus random byte damage; panics on the
/// first file that is accepted or diagnosed with the wrong class.
pub fn fuzz_loader(rounds: usize, seed: u64) -> usize {
    let mut draws = Draws::new(seed);
    let mut checked = 0;
    for round in 0..rounds {
        let kind = if round % 2 == 0 {
            ProfileKind::Constant
        } else {
            ProfileKind::Linear
        };
        let mut cfg = config(draws.next_u64(), kind, HorizonPolicy::StaticAfterHorizon);
        cfg.avg_degree = 2.0;
        cfg.intervals = cfg.intervals.max(2);
        let text = write_graph(&generate(&cfg).unwrap());
        let m = MUTATIONS[round % MUTATIONS.len()];
        let (bad, line) = mutate(&text, m, &mut draws);
        let err = parse_graph(&bad).expect_err(&format!("{m:?} accepted:\n{bad}"));
        assert!(expected(m, &err.kind), "{m:?} gave {err}\n{bad}");
        assert_eq!(err.line, line, "{m:?} gave {err}\n{bad}");
        assert!(validate_text(&bad).iter().any(|e| expected(m, &e.kind)));
        checked += 1;

        // untargeted damage: must never panic
        let mut bytes = bad.into_bytes();
        for _ in 0..1 + draws.index(4) {
            let i = draws.index(bytes.len());
            bytes[i] = b"0123456789 .-#\nxe+"[draws.index(18)];
        }
        let damaged = String::from_utf8_lossy(&bytes);
        let _ = parse_graph(&damaged);
        let _ = validate_text(&damaged);
    }
    checked
}

use std::fmt::Write as _;
use std::path::Path;

use antimatroid::instance::{format_family, format_words};
use antimatroid::oracle::{self, OracleBudget};
use antimatroid::operator::EXHAUSTIVE_LIMIT;
use antimatroid::{
    bridge_f_from_pi, failure_linkage, greedy_minimax, nesting_w, run_chain, run_chain_nonempty,
    verify_correspondence, Error, Instance, InstanceError, IsotoneScope, LinkageSpec, OperatorSpec,
    SetFamily, SimpleLanguage,
};

use crate::{RandomKind, What};

/// Samples used by the monotonicity check above the exhaustive limit.
const MONOTONE_SAMPLES: usize = 4096;

pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

pub struct CliError {
    pub code: u8,
    pub message: String,
    /// Output produced before the failure.
    pub partial: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
            partial: String::new(),
        }
    }

    fn after(mut self, partial: String) -> Self {
        self.partial = partial;
        self
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
            partial: String::new(),
        }
    }
}

pub fn load(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Instance::parse(&text).map_err(|e| match e {
        InstanceError::Syntax { .. } => CliError::input(format!("{}: {e}", path.display())),
        InstanceError::Invalid(inner) => {
            CliError::input(format!("{}: invalid instance: {inner}", path.display()))
        }
    })
}

fn operator(inst: &Instance) -> Result<&OperatorSpec, CliError> {
    inst.operator
        .as_ref()
        .ok_or_else(|| CliError::input("instance has no operator"))
}

fn linkage(inst: &Instance) -> Result<&LinkageSpec, CliError> {
    inst.linkage
        .as_ref()
        .ok_or_else(|| CliError::input("instance has no linkage"))
}

/// The explicit family, or the one generated by the operator.
fn family(inst: &Instance) -> Result<SetFamily, CliError> {
    match (&inst.family, &inst.operator) {
        (Some(f), _) => Ok(f.clone()),
        (None, Some(op)) => Ok(op.family()),
        (None, None) => Err(CliError::input("instance has no family or operator")),
    }
}

/// The explicit operator, or `Γ(B_X)` of the explicit family.
fn operator_or_family(inst: &Instance) -> Result<OperatorSpec, CliError> {
    match (&inst.operator, &inst.family) {
        (Some(op), _) => Ok(op.clone()),
        (None, Some(f)) => Ok(OperatorSpec::from_family(f.clone())?),
        (None, None) => Err(CliError::input("instance has no operator or family")),
    }
}

struct Checks {
    text: String,
    pass: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            text: String::new(),
            pass: true,
        }
    }

    fn line(&mut self, name: &str, witness: Option<String>) {
        match witness {
            None => {
                let _ = writeln!(self.text, "{name}: pass");
            }
            Some(w) if w.is_empty() => {
                self.pass = false;
                let _ = writeln!(self.text, "{name}: FAIL");
            }
            Some(w) => {
                self.pass = false;
                let _ = writeln!(self.text, "{name}: FAIL witness {w}");
            }
        }
    }

    fn finish(self) -> Outcome {
        Outcome {
            text: self.text,
            pass: self.pass,
        }
    }
}

fn family_checks(f: &SetFamily) -> Checks {
    let mut c = Checks::new();
    c.line("accessible", f.accessibility_witness().map(|x| format!("X={x}")));
    c.line(
        "union-closed",
        f.union_witness().map(|(x, y)| format!("X={x} Y={y}")),
    );
    c.line("exchange", f.exchange_witness().map(|(x, y)| format!("X={x} Y={y}")));
    c.line(
        "interval",
        f.interval_witness().map(|(x, y, e)| format!("X={x} Y={y} x={e}")),
    );
    c.line("antimatroid", (!f.is_antimatroid()).then(String::new));
    c
}

fn language_checks(l: &SimpleLanguage) -> Checks {
    let mut c = Checks::new();
    c.line("prefix", l.prefix_violation().map(|w| format!("{w}")));
    c.line(
        "exchange",
        l.exchange_violation().map(|(a, b)| format!("alpha=\"{a}\" beta=\"{b}\"")),
    );
    c.line("antimatroid-language", (!l.is_antimatroid_language()).then(String::new));
    c
}

pub fn verify(inst: &Instance, what: What) -> Result<Outcome, CliError> {
    let checks = match what {
        What::Family => family_checks(&family(inst)?),
        What::Operator => {
            let op = operator(inst)?;
            let mut c = Checks::new();
            // Ψ(X) ∩ X = ∅ is enforced when the operator is built
            c.line("zero", None);
            if op.ground().len() <= EXHAUSTIVE_LIMIT {
                let w = op.check_isotone(IsotoneScope::AllSubsets)?;
                c.line("isotone", w.map(|w| w.to_string()));
            } else {
                let w = op.check_isotone(IsotoneScope::FeasibleOnly)?;
                c.line("isotone (feasible sets)", w.map(|w| w.to_string()));
            }
            c
        }
        What::Linkage => {
            let pi = linkage(inst)?;
            let mut c = Checks::new();
            if pi.ground().len() <= EXHAUSTIVE_LIMIT {
                c.line("monotone", pi.check_monotone()?.map(|w| w.to_string()));
            } else {
                let w = pi.check_monotone_sampled(0, MONOTONE_SAMPLES)?;
                c.line("monotone (sampled)", w.map(|w| w.to_string()));
            }
            c
        }
        What::Language => language_checks(
            inst.language
                .as_ref()
                .ok_or_else(|| CliError::input("instance has no language"))?,
        ),
    };
    Ok(checks.finish())
}

pub fn generate(inst: &Instance) -> Result<Outcome, CliError> {
    Ok(Outcome {
        text: format_family(&operator(inst)?.family()),
        pass: true,
    })
}

pub fn optimize(inst: &Instance, exclude_empty: bool, trace: bool, check: bool) -> Result<Outcome, CliError> {
    let op = operator(inst)?;
    let pi = linkage(inst)?;
    let result = if exclude_empty {
        match run_chain_nonempty(op, pi)? {
            Some(r) => r,
            None => {
                return Ok(Outcome {
                    text: "optimum none\n".into(),
                    pass: false,
                })
            }
        }
    } else {
        run_chain(op, pi)?
    };
    let mut text = format!("optimum {} value {}\n", result.optimum, result.value);
    if trace {
        let _ = writeln!(text, "trace");
        let _ = writeln!(text, "{}", result.trace);
        let _ = writeln!(text, "evaluations {}", result.trace.evaluations);
    }
    let mut pass = true;
    if check {
        let budget = OracleBudget::default();
        let best = if exclude_empty {
            oracle::brute_max_f_psi_excluding_empty(op, pi, &budget)
        } else {
            oracle::brute_max_f_psi(op, pi, &budget).map(Some)
        };
        let best = best
            .map_err(|e| CliError::from(e).after(text.clone()))?
            .expect("a chain optimum implies a candidate set");
        let matched = best.value == result.value;
        pass = matched;
        let at = best.argmax.sets().first().expect("argmax is non-empty");
        let _ = writeln!(
            text,
            "oracle {} at {} {}",
            best.value,
            at,
            if matched { "MATCH" } else { "MISMATCH" }
        );
    }
    Ok(Outcome { text, pass })
}

pub fn truncate(inst: &Instance, k: usize) -> Result<Outcome, CliError> {
    Ok(Outcome {
        text: format_family(&family(inst)?.truncate(k)),
        pass: true,
    })
}

pub fn close(inst: &Instance, k: Option<usize>) -> Result<Outcome, CliError> {
    let mut f = family(inst)?;
    if let Some(k) = k {
        f = f.truncate(k);
    }
    Ok(Outcome {
        text: format_family(&f.close_under_union()),
        pass: true,
    })
}

pub fn lang_words(inst: &Instance) -> Result<Outcome, CliError> {
    let language = SimpleLanguage::from_family(&family(inst)?)?;
    Ok(Outcome {
        text: format_words(language.words()),
        pass: true,
    })
}

pub fn lang_check(inst: &Instance) -> Result<Outcome, CliError> {
    verify(inst, What::Language)
}

pub fn lang_minimax(inst: &Instance, k: usize) -> Result<Outcome, CliError> {
    let op = operator_or_family(inst)?;
    let f = bridge_f_from_pi(linkage(inst)?)?;
    let word = greedy_minimax(&op, &f, k)?;
    let w = nesting_w(&f, &word)?;
    let best = oracle::brute_minimax_w(&op, &f, k, &OracleBudget::default())?;
    let matched = best.value == w;
    Ok(Outcome {
        text: format!("{word} W={w} {}\n", if matched { "MATCH" } else { "MISMATCH" }),
        pass: matched,
    })
}

pub fn correspond(inst: &Instance, k: usize) -> Result<Outcome, CliError> {
    let report = verify_correspondence(operator(inst)?, linkage(inst)?, k)?;
    Ok(Outcome {
        text: format!("{report}\n"),
        pass: report.holds,
    })
}

pub fn random(seed: u64, n: usize, levels: usize, kind: RandomKind) -> Result<Outcome, CliError> {
    let to_input = |e: Error| CliError::input(e.to_string());
    let (op, pi) = match kind {
        RandomKind::Isotone => (
            oracle::random_isotone_operator(seed, n).map_err(to_input)?,
            oracle::random_monotone_linkage(seed.wrapping_add(1), n, levels).map_err(to_input)?,
        ),
        RandomKind::NonIsotone => {
            let op = oracle::random_non_isotone_operator(seed, n).map_err(to_input)?;
            let w = op
                .check_isotone(IsotoneScope::FeasibleOnly)?
                .expect("the sampler only returns non-isotone operators");
            let (_, trace) = op.generate_family();
            let pi = failure_linkage(&op, &w, &trace)?;
            (op, pi)
        }
    };
    let inst = Instance {
        ground: op.ground().clone(),
        operator: Some(op),
        linkage: Some(pi),
        family: None,
        language: None,
    };
    Ok(Outcome {
        text: format!("{}\n", inst.to_json()),
        pass: true,
    })
}

//! SOP (re-)minimization used at the start of every outer DSOP pass.
//!
//! The builtin backend is a small espresso-flavoured loop: greedily expand
//! every cube against `on ∪ dc`, drop absorbed cubes, then remove redundant
//! cubes smallest-first. There is no REDUCE step and no multi-output
//! sharing. An external minimizer can be plugged in through a PLA round
//! trip.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Mutex;

use crate::cover::{Cover, FunctionSpec};
use crate::cube::{Cube, Trit};
use crate::error::{Error, Result};
use crate::pla::{self, PlaType};

/// Environment variable naming an external minimizer executable.
pub const MINIMIZER_ENV: &str = "DSOPFORGE_MINIMIZER";

const MAX_ROUNDS: usize = 10;

static EXTERNAL_LOCK: Mutex<()> = Mutex::new(());

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum MinimizerBackend {
    #[default]
    Builtin,
    /// Executable invoked as `<path> <input.pla>`, printing a PLA on stdout.
    External(PathBuf),
    /// Returns `normalize(on)`; isolates the DSOP engine in tests.
    Identity,
}

impl MinimizerBackend {
    /// `External` when [`MINIMIZER_ENV`] is set and non-empty, else `Builtin`.
    pub fn from_env() -> MinimizerBackend {
        match std::env::var_os(MINIMIZER_ENV) {
            Some(path) if !path.is_empty() => MinimizerBackend::External(path.into()),
            _ => MinimizerBackend::Builtin,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MinimizerBackend::Builtin => "builtin",
            MinimizerBackend::External(_) => "external",
            MinimizerBackend::Identity => "identity",
        }
    }
}

impl fmt::Display for MinimizerBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimizerBackend::External(path) => write!(f, "external:{}", path.display()),
            other => f.write_str(other.kind()),
        }
    }
}

impl std::str::FromStr for MinimizerBackend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "builtin" => Ok(MinimizerBackend::Builtin),
            "identity" => Ok(MinimizerBackend::Identity),
            _ => match s.strip_prefix("external:") {
                Some(path) if !path.is_empty() => Ok(MinimizerBackend::External(path.into())),
                _ => Err(format!("unknown minimizer `{s}` (expected builtin, identity or external:PATH)")),
            },
        }
    }
}

/// Computes an SOP `P` for `f`: every on-point covered, every cube inside
/// `on ∪ dc`, every cube touching `on`.
pub fn build_sop(f: &FunctionSpec, backend: &MinimizerBackend) -> Result<Cover> {
    match backend {
        MinimizerBackend::Identity => Ok(f.on.normalize()),
        MinimizerBackend::Builtin => Ok(builtin(f)),
        MinimizerBackend::External(path) => external(f, path),
    }
}

fn builtin(f: &FunctionSpec) -> Cover {
    let valid = f.care_cover();
    let mut current = f.on.normalize();
    for _ in 0..MAX_ROUNDS {
        let before = current.len();
        let expanded: Vec<Cube> = current.iter().map(|c| expand_unchecked(c, &valid)).collect();
        let expanded = Cover::from_vec_unchecked(f.n(), expanded).normalize();
        current = irredundant(&expanded, &f.on);
        if current.len() >= before {
            break;
        }
    }
    current
}

/// Frees literals of `p` from the highest variable index down, keeping each
/// one free iff the enlarged cube is still contained in `valid`.
pub fn expand_cube(p: &Cube, valid: &Cover) -> Result<Cube> {
    if !valid.contains_cube(p)? {
        return Err(Error::contract(format!("expand_cube: {p} is not an implicant of the valid cover")));
    }
    Ok(expand_unchecked(p, valid))
}

fn expand_unchecked(p: &Cube, valid: &Cover) -> Cube {
    let mut cube = p.clone();
    for i in (0..cube.n()).rev() {
        if cube.get(i) == Trit::Free {
            continue;
        }
        let wider = cube.with(i, Trit::Free);
        if valid.covers(&wider) {
            cube = wider;
        }
    }
    cube
}

/// Removes cubes whose `must_cover` points are covered by the rest,
/// smallest dimension first.
pub fn irredundant(p: &Cover, must_cover: &Cover) -> Cover {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| p.cubes()[i].dimension());
    let mut alive = vec![true; p.len()];
    for i in order {
        let c = &p.cubes()[i];
        let rest = Cover::from_vec_unchecked(
            p.n(),
            p.iter()
                .enumerate()
                .filter(|&(j, _)| j != i && alive[j])
                .map(|(_, q)| q.clone())
                .collect(),
        );
        let redundant = must_cover
            .iter()
            .filter_map(|m| m.meet(c))
            .all(|piece| rest.covers(&piece));
        if redundant {
            alive[i] = false;
        }
    }
    let kept = p
        .iter()
        .zip(alive)
        .filter(|&(_c, a)| a).map(|(c, _a)| c.clone())
        .collect();
    Cover::from_vec_unchecked(p.n(), kept)
}

fn external(f: &FunctionSpec, path: &PathBuf) -> Result<Cover> {
    let fail = |message: String| Error::Backend {
        path: path.clone(),
        message,
    };
    let text = pla::write_pla(std::slice::from_ref(&f.on), std::slice::from_ref(&f.dc), None, PlaType::Fd)
        .map_err(|e| fail(format!("cannot encode input: {e}")))?;

    let output = {
        let _guard = EXTERNAL_LOCK.lock().unwrap_or_else(|e| e.into_inner());
        let mut input = tempfile::Builder::new()
            .prefix("dsopforge-")
            .suffix(".pla")
            .tempfile()?;
        input.write_all(text.as_bytes())?;
        input.flush()?;
        Command::new(path)
            .arg(input.path())
            .output()
            .map_err(|e| fail(format!("cannot spawn: {e}")))?
    };
    if !output.status.success() {
        return Err(fail(format!(
            "exited with {}: {}",
            output.status,
            String::from_utf8_lossy(&output.stderr).trim()
        )));
    }
    let stdout = String::from_utf8_lossy(&output.stdout);
    let parsed = pla::parse_pla(&stdout).map_err(|e| fail(format!("unreadable output: {e}")))?;
    if parsed.num_inputs != f.n() || parsed.num_outputs != 1 {
        return Err(fail(format!(
            "expected a 1-output PLA over {} inputs, got .i {} .o {}",
            f.n(),
            parsed.num_inputs,
            parsed.num_outputs
        )));
    }
    let result = pla::split_outputs(&parsed).swap_remove(0).on;
    // discard dc-only cubes, then hold the backend to the SOP contract
    let result = Cover::from_vec_unchecked(
        f.n(),
        result.into_cubes().into_iter().filter(|c| f.on.touches(c)).collect(),
    );
    let valid = f.care_cover();
    if let Some(bad) = result.iter().find(|c| !valid.covers(c)) {
        return Err(fail(format!("cube {bad} leaves the on/dc set")));
    }
    if let Some(bad) = f.on.iter().find(|c| !result.covers(c)) {
        return Err(fail(format!("on-set cube {bad} is not covered")));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(rows: &[&str]) -> Cover {
        Cover::parse(rows.first().map_or(0, |r| r.len()), rows).unwrap()
    }

    fn c(s: &str) -> Cube {
        s.parse().unwrap()
    }

    #[test]
    fn build_sop_examples() {
        let f = FunctionSpec::completely_specified(cv(&["000-", "1101"]));
        assert_eq!(build_sop(&f, &MinimizerBackend::Builtin).unwrap(), cv(&["000-", "1101"]));

        let f = FunctionSpec::completely_specified(cv(&["0-"]));
        assert_eq!(build_sop(&f, &MinimizerBackend::Builtin).unwrap(), cv(&["0-"]));

        let f = FunctionSpec::completely_specified(cv(&["0-", "1-"]));
        let p = build_sop(&f, &MinimizerBackend::Builtin).unwrap();
        assert_eq!(p, cv(&["--"]));
        assert!(p.is_tautology());
    }

    #[test]
    fn build_sop_uses_dont_cares() {
        let f = FunctionSpec::new(cv(&["000"]), cv(&["001", "01-"])).unwrap();
        assert_eq!(build_sop(&f, &MinimizerBackend::Builtin).unwrap(), cv(&["0--"]));
        assert_eq!(build_sop(&f, &MinimizerBackend::Identity).unwrap(), cv(&["000"]));
    }

    #[test]
    fn expand_examples() {
        let valid = cv(&["0-0-", "01--"]);
        // each single-literal removal checked against the containment oracle
        assert!(!valid.contains_cube(&c("-100")).unwrap());
        assert!(valid.contains_cube(&c("0-00")).unwrap());
        assert!(valid.contains_cube(&c("01-0")).unwrap());
        assert_eq!(expand_cube(&c("0100"), &valid).unwrap(), c("01--"));
        assert_eq!(expand_cube(&c("0110"), &cv(&["----"])).unwrap(), c("----"));
        assert_eq!(expand_cube(&c("000-"), &cv(&["000-", "1101"])).unwrap(), c("000-"));
        assert!(expand_cube(&c("1---"), &valid).is_err());
    }

    #[test]
    fn irredundant_examples() {
        assert_eq!(irredundant(&cv(&["0-", "1-", "--"]), &cv(&["--"])), cv(&["--"]));
        let p = cv(&["01--", "1-1-"]);
        assert_eq!(irredundant(&p, &p), p);
        // the consensus term goes
        let p = cv(&["0-1", "11-", "-11"]);
        assert_eq!(irredundant(&p, &p), cv(&["0-1", "11-"]));
    }

    #[test]
    fn backend_parsing() {
        assert_eq!("builtin".parse::<MinimizerBackend>().unwrap(), MinimizerBackend::Builtin);
        assert_eq!(
            "external:/bin/espresso".parse::<MinimizerBackend>().unwrap(),
            MinimizerBackend::External("/bin/espresso".into())
        );
        assert!("external:".parse::<MinimizerBackend>().is_err());
        assert_eq!(MinimizerBackend::External("x".into()).to_string(), "external:x");
    }
}

//! Berkeley (espresso) PLA reading and writing.
//!
//! Supported: `.i`, `.o`, `.p`, `.type f|fd`, `.ilb`, `.ob`, `.e`/`.end`,
//! `#` comments, LF or CRLF line endings. Input positions accept `0 1 -`
//! plus the aliases `2` and `~`; outputs accept `1 4` (on), `0 ~` (off) and
//! `- 2` (don't care).

use std::collections::HashSet;
use std::fmt;

use crate::cover::{Cover, FunctionSpec};
use crate::cube::Cube;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PlaType {
    /// `-` outputs are treated as `0`.
    F,
    /// `-` outputs are don't cares.
    #[default]
    Fd,
}

impl PlaType {
    fn as_str(self) -> &'static str {
        match self {
            PlaType::F => "f",
            PlaType::Fd => "fd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutputValue {
    Zero,
    One,
    DontCare,
}

impl OutputValue {
    fn from_char(c: char) -> Option<OutputValue> {
        match c {
            '1' | '4' => Some(OutputValue::One),
            '0' | '~' => Some(OutputValue::Zero),
            '-' | '2' => Some(OutputValue::DontCare),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            OutputValue::Zero => '0',
            OutputValue::One => '1',
            OutputValue::DontCare => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaRow {
    pub inputs: Cube,
    pub outputs: Vec<OutputValue>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaLabels {
    pub inputs: Option<Vec<String>>,
    pub outputs: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaFile {
    pub num_inputs: usize,
    pub num_outputs: usize,
    pub pla_type: PlaType,
    pub rows: Vec<PlaRow>,
    pub labels: PlaLabels,
    /// The `.p` value when one was given.
    pub declared_products: Option<usize>,
}

pub fn parse_pla(text: &str) -> Result<PlaFile> {
    let mut num_inputs = None;
    let mut num_outputs = None;
    let mut pla_type = PlaType::Fd;
    let mut labels = PlaLabels::default();
    let mut declared_products = None;
    let mut rows = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(directive) = line.strip_prefix('.') {
            let mut words = directive.split_whitespace();
            let name = words.next().unwrap_or("");
            let args: Vec<&str> = words.collect();
            let count = |what: &str| -> Result<usize> {
                match args.as_slice() {
                    [v] => v
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad {what} count `{v}`"))),
                    _ => Err(Error::parse(line_no, format!(".{name} expects one number"))),
                }
            };
            match name {
                "i" => num_inputs = Some(count("input")?),
                "o" => num_outputs = Some(count("output")?),
                "p" => declared_products = Some(count("product")?),
                "type" => {
                    pla_type = match args.as_slice() {
                        ["f"] => PlaType::F,
                        ["fd"] => PlaType::Fd,
                        other => {
                            return Err(Error::parse(
                                line_no,
                                format!("unsupported .type `{}` (only f and fd)", other.join(" ")),
                            ))
                        }
                    }
                }
                "ilb" => labels.inputs = Some(args.iter().map(|s| s.to_string()).collect()),
                "ob" => labels.outputs = Some(args.iter().map(|s| s.to_string()).collect()),
                "e" | "end" => break,
                other => {
                    return Err(Error::parse(line_no, format!("unsupported directive `.{other}`")));
                }
            }
            continue;
        }

        let (Some(ni), Some(no)) = (num_inputs, num_outputs) else {
            return Err(Error::parse(line_no, "product row before .i and .o"));
        };
        let chars: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.len() != ni + no {
            return Err(Error::parse(
                line_no,
                format!("row has {} positions, expected {} inputs + {} outputs", chars.len(), ni, no),
            ));
        }
        let input: String = chars[..ni].iter().collect();
        let inputs = input.parse::<Cube>().map_err(|e| match e {
            Error::InvalidTrit { found, position } => {
                Error::parse(line_no, format!("bad input character {found:?} at column {}", position + 1))
            }
            other => other,
        })?;
        let outputs = chars[ni..]
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                OutputValue::from_char(c).ok_or_else(|| {
                    Error::parse(line_no, format!("bad output character {c:?} at output {}", k + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(PlaRow { inputs, outputs });
    }

    let num_inputs = num_inputs.ok_or_else(|| Error::parse(0, "missing .i"))?;
    let num_outputs = num_outputs.ok_or_else(|| Error::parse(0, "missing .o"))?;
    for (what, list, want) in [
        ("input", &labels.inputs, num_inputs),
        ("output", &labels.outputs, num_outputs),
    ] {
        if let Some(names) = list {
            if names.len() != want {
                return Err(Error::parse(0, format!("{} {what} labels for {want} {what}s", names.len())));
            }
        }
    }
    Ok(PlaFile {
        num_inputs,
        num_outputs,
        pla_type,
        rows,
        labels,
        declared_products,
    })
}

/// One [`FunctionSpec`] per output column. Under type `fd` points that are
/// both on and don't care count as don't care.
pub fn split_outputs(pla: &PlaFile) -> Vec<FunctionSpec> {
    (0..pla.num_outputs)
        .map(|j| {
            let mut on = Cover::new(pla.num_inputs);
            let mut dc = Cover::new(pla.num_inputs);
            for row in &pla.rows {
                match (row.outputs[j], pla.pla_type) {
                    (OutputValue::One, _) => on.push(row.inputs.clone()),
                    (OutputValue::DontCare, PlaType::Fd) => dc.push(row.inputs.clone()),
                    _ => Ok(()),
                }
                .expect("row width checked at parse time");
            }
            if dc.is_empty() {
                FunctionSpec::completely_specified(on)
            } else {
                FunctionSpec::with_dc_precedence(on, dc).expect("covers share the input width")
            }
        })
        .collect()
}

/// Number of distinct input cubes across all outputs; a cube shared by
/// several outputs counts once.
pub fn merged_product_count(per_output: &[Cover]) -> usize {
    per_output
        .iter()
        .flat_map(Cover::iter)
        .collect::<HashSet<_>>()
        .len()
}

impl PlaFile {
    /// Builds a PLA with one row per distinct cube, in order of first
    /// appearance (outputs in index order, cubes in cover order). Don't-care
    /// covers, when given, add `-` rows after the on rows.
    pub fn from_covers(
        on: &[Cover],
        dc: &[Cover],
        labels: Option<&PlaLabels>,
        pla_type: PlaType,
    ) -> Result<PlaFile> {
        let num_outputs = on.len();
        let num_inputs = on.first().map_or(0, Cover::n);
        if !dc.is_empty() && dc.len() != num_outputs {
            return Err(Error::contract(format!("{} dc covers for {num_outputs} outputs", dc.len())));
        }
        for c in on.iter().chain(dc) {
            if c.n() != num_inputs {
                return Err(Error::DimensionMismatch {
                    left: num_inputs,
                    right: c.n(),
                });
            }
        }
        let mut rows = Vec::new();
        for (covers, mark) in [(on, OutputValue::One), (dc, OutputValue::DontCare)] {
            let mut index = std::collections::HashMap::new();
            for (j, cover) in covers.iter().enumerate() {
                for cube in cover {
                    let slot = *index.entry(cube.clone()).or_insert_with(|| {
                        rows.push(PlaRow {
                            inputs: cube.clone(),
                            outputs: vec![OutputValue::Zero; num_outputs],
                        });
                        rows.len() - 1
                    });
                    rows[slot].outputs[j] = mark;
                }
            }
        }
        Ok(PlaFile {
            num_inputs,
            num_outputs,
            pla_type,
            declared_products: Some(rows.len()),
            rows,
            labels: labels.cloned().unwrap_or_default(),
        })
    }
}

/// Renders per-output covers as PLA text (`.p` = merged product count).
pub fn write_pla(on: &[Cover], dc: &[Cover], labels: Option<&PlaLabels>, pla_type: PlaType) -> Result<String> {
    Ok(PlaFile::from_covers(on, dc, labels, pla_type)?.to_string())
}

impl fmt::Display for PlaFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, ".i {}", self.num_inputs)?;
        writeln!(f, ".o {}", self.num_outputs)?;
        if let Some(names) = &self.labels.inputs {
            writeln!(f, ".ilb {}", names.join(" "))?;
        }
        if let Some(names) = &self.labels.outputs {
            writeln!(f, ".ob {}", names.join(" "))?;
        }
        writeln!(f, ".type {}", self.pla_type.as_str())?;
        if let Some(p) = self.declared_products {
            writeln!(f, ".p {p}")?;
        }
        for row in &self.rows {
            let out: String = row.outputs.iter().map(|o| o.as_char()).collect();
            writeln!(f, "{} {out}", row.inputs)?;
        }
        writeln!(f, ".e")
    }
}

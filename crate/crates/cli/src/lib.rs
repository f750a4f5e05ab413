//! Argument parsing and command dispatch for the `courbe` binary.
//!
//! [`execute`] turns a parsed [`Cli`] into a [`Report`], which carries both
//! the text rendering and the JSON body of the result. The binary only
//! chooses which one to print.

mod commands;
mod svg;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use courbe::ring::CoeffDomain;
use serde_json::{Map, Value};

pub use commands::execute;
pub use svg::hn_polygon_svg;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "courbe/1";

#[derive(Parser, Debug, Clone)]
#[command(
    name = "courbe",
    version,
    about = "Sheaves on the Fargues-Fontaine curve, their tilt, and Banach-Colmez invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the HN polygon to this file (`hn` only).
    #[arg(long, global = true, value_name = "FILE")]
    pub svg: Option<PathBuf>,

    /// Degree truncation for `derham` and `cocycle`.
    #[arg(long, global = true, value_name = "D")]
    pub trunc: Option<usize>,

    /// Seed for randomized commands.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Normal form, rank, degree, slope, χ and HN pieces.
    Info {
        expr: String,
    },
    /// Harder-Narasimhan filtration and polygon.
    Hn {
        expr: String,
    },
    /// Hom between two sheaves, or between two tilted objects.
    Hom {
        source: String,
        target: String,
    },
    Ext1 {
        source: String,
        target: String,
    },
    Ext2 {
        source: String,
        target: String,
    },
    /// χ(F), or the Euler form χ(F, G) when two objects are given.
    Chi {
        expr: String,
        other: Option<String>,
    },
    /// Class in K₀ = Z[O] ⊕ Z[O(1)].
    K0 {
        expr: String,
    },
    /// Sheaf to tilted object.
    Tilt {
        expr: String,
    },
    /// Tilted object back to a sheaf.
    Untilt {
        expr: String,
    },
    /// HN filtration for μ⁻ in the tilted heart.
    Hnminus {
        expr: String,
    },
    /// Banach-Colmez atoms and (dim, ht).
    Bc {
        expr: String,
    },
    /// Effective presentation 0 → O^a → F' → T → 0.
    Present {
        expr: String,
    },
    /// Hom and Ext tables between G_a and Q_p.
    Breen,
    /// Koszul complex of the given elements and its cohomology.
    Koszul {
        #[arg(long, default_value = "Q[t]")]
        ring: CoeffDomain,
        /// Number of random elements drawn when none are given and `--seed` is set.
        #[arg(long, default_value_t = 3)]
        count: usize,
        elements: Vec<String>,
    },
    /// Décalage η_f, on Koszul(f·g), on a complex file, or on random
    /// quasi-isomorphisms when `--seed` is set.
    Eta {
        #[arg(long, default_value = "Q[t]")]
        ring: CoeffDomain,
        #[arg(long, default_value = "t")]
        f: String,
        /// Shift profile `start:v0,v1,...`; defaults to δ(j) = max(j, 0).
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Number of random instances.
        #[arg(long, default_value_t = 20)]
        count: usize,
        elements: Vec<String>,
    },
    /// Cohomology of a complex stored as JSON.
    Cohom {
        file: PathBuf,
    },
    /// Graded de Rham complex of affine n-space.
    Derham {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Symmetric 2-cocycles of degree q, or the Hom-column report.
    Cocycle {
        q: Option<u32>,
        #[arg(long)]
        report: bool,
        /// Mahler truncation for the report.
        #[arg(long, default_value_t = 4)]
        mahler: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Hn { .. } => "hn",
            Command::Hom { .. } => "hom",
            Command::Ext1 { .. } => "ext1",
            Command::Ext2 { .. } => "ext2",
            Command::Chi { .. } => "chi",
            Command::K0 { .. } => "k0",
            Command::Tilt { .. } => "tilt",
            Command::Untilt { .. } => "untilt",
            Command::Hnminus { .. } => "hnminus",
            Command::Bc { .. } => "bc",
            Command::Present { .. } => "present",
            Command::Breen => "breen",
            Command::Koszul { .. } => "koszul",
            Command::Eta { .. } => "eta",
            Command::Cohom { .. } => "cohom",
            Command::Derham { .. } => "derham",
            Command::Cocycle { .. } => "cocycle",
        }
    }
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub text: String,
    pub body: Map<String, Value>,
    pub svg: Option<String>,
}

impl Report {
    /// The versioned JSON document: `{schema, command, ...body}`.
    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema".into(), Value::from(SCHEMA));
        doc.insert("command".into(), Value::from(self.command));
        doc.extend(self.body.clone());
        Value::Object(doc)
    }
}

/// Anything wrong with the user's input, including unreadable files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<courbe::Error> for InputError {
    fn from(e: courbe::Error) -> Self {
        InputError(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<Report, InputError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| InputError(e.to_string()))?;
    execute(&cli)
}

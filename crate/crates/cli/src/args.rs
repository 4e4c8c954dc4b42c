use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zerowt::oracle::DEFAULT_CAP;
use zerowt::{CorootVec, RootDatum, TorusPoint, Weight};

#[derive(Debug, Parser)]
#[command(name = "zerowt", version, about = "Traces of Weyl group elements on zero weight spaces")]
pub struct Cli {
    /// Output format. `table` defaults to csv, everything else to json.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Engine,
    Golden,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan matrix, positive roots and coroots, ρ and conjugacy classes.
    Datum {
        #[arg(long)]
        group: String,
    },
    /// tr(w, V_μ^T) by the partition-function engine.
    Trace(TraceArgs),
    /// tr(w, V_μ^T) by summing weight multiplicities (slow, independent).
    Oracle {
        #[command(flatten)]
        trace: TraceArgs,
        /// Refuse representations of larger dimension.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// The character of V_μ^T on every conjugacy class.
    Character {
        #[command(flatten)]
        weight: WeightArgs,
        /// Torsion point for a class without a canonical one, as J=N:k1,k2,...
        /// with J the class index printed by `datum`.
        #[arg(long, value_name = "J=N:K")]
        torsion: Vec<String>,
    },
    /// Multiplicities of the irreducible characters of W in V_μ^T.
    Decompose {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_name = "J=N:K")]
        torsion: Vec<String>,
    },
    /// Traces over a coordinate grid, restricted to the domain of the closed-form tables.
    Table {
        #[arg(long)]
        group: String,
        /// Restrict to one class; defaults to every tabulated class.
        #[arg(long)]
        class: Option<String>,
        /// Inclusive range for every coordinate.
        #[arg(long, default_value = "1..12", value_parser = parse_range)]
        range: RangeInclusive<i64>,
        #[arg(long, value_enum, default_value_t = Source::Engine)]
        source: Source,
        /// With `--source golden`, rebuild D4/F4/E6 rows from their cosets instead of the printed monomials.
        #[arg(long)]
        corrected: bool,
    },
    /// Weights whose zero weight space is an irreducible W-module.
    SearchIrreducible {
        #[arg(long)]
        group: String,
        /// Extra bound on the product of coroot pairings.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Engine against closed forms and the oracle on a grid; exit 1 on any mismatch.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "1..12", value_parser = parse_range)]
        range: RangeInclusive<i64>,
        /// Run the oracle on cells with dim V_μ at most this.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u128,
        /// Compare D4/F4/E6 against rows rebuilt from their cosets instead of the printed monomials.
        #[arg(long)]
        corrected: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct WeightSel {
    /// μ in ρ-shifted fundamental weight coordinates, every entry ≥ 1.
    #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
    pub mu: Option<Coords>,
    /// The highest weight μ − ρ instead.
    #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
    pub highest_weight: Option<Coords>,
}

/// A coordinate list taken as one argument.
#[derive(Debug, Clone)]
pub struct Coords(pub Vec<i64>);

fn parse_coords(s: &str) -> Result<Coords, String> {
    parse_list(s).map(Coords)
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[arg(long)]
    pub group: String,
    #[command(flatten)]
    pub sel: WeightSel,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub weight: WeightArgs,
    /// Named class (1, cox, cox^k, w0, refl:i, r_a, [211], ...) or a word such as "1 2 1".
    #[arg(long)]
    pub class: String,
    /// Torsion point N:k1,k2,... meaning exp(2πi k/N) in simple coroot coordinates.
    #[arg(long, value_parser = parse_torsion)]
    pub torsion: Option<Torsion>,
}

impl WeightSel {
    pub fn resolve(&self, d: &RootDatum) -> Result<Weight, String> {
        let (v, shifted) = match (&self.mu, &self.highest_weight) {
            (Some(v), _) => (&v.0, true),
            (None, Some(v)) => (&v.0, false),
            (None, None) => return Err("one of --mu, --highest-weight is required".into()),
        };
        if v.len() != d.rank() {
            return Err(format!("{} has rank {}, got {} coordinates", d.label, d.rank(), v.len()));
        }
        let w = Weight(v.clone());
        Ok(if shifted { w } else { w.add(&d.rho) })
    }
}

pub fn torus_point(d: &RootDatum, Torsion(n, k): &Torsion) -> Result<TorusPoint, String> {
    if k.len() != d.rank() {
        return Err(format!("torsion point needs {} coordinates", d.rank()));
    }
    Ok(TorusPoint { modulus: *n, k: CorootVec(k.clone()) })
}

pub fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    let v: Result<Vec<i64>, _> =
        s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::parse).collect();
    match v {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(format!("expected integers separated by commas, got `{s}`")),
    }
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    if a < 1 || b < a {
        return Err(format!("range `{s}` must satisfy 1 ≤ a ≤ b"));
    }
    Ok(a..=b)
}

/// `N:k1,k2,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torsion(pub u32, pub Vec<i64>);

pub fn parse_torsion(s: &str) -> Result<Torsion, String> {
    let (n, k) = s.split_once(':').ok_or_else(|| format!("expected N:k1,k2,..., got `{s}`"))?;
    let n: u32 = n.trim().parse().map_err(|_| format!("bad modulus in `{s}`"))?;
    if n == 0 {
        return Err("modulus must be positive".into());
    }
    Ok(Torsion(n, parse_list(k)?))
}

/// `J=N:k1,...` as used by `character` and `decompose`.
pub fn parse_class_torsion(s: &str) -> Result<(usize, Torsion), String> {
    let (j, t) = s.split_once('=').ok_or_else(|| format!("expected J=N:k1,k2,..., got `{s}`"))?;
    let j: usize = j.trim().trim_start_matches('#').parse().map_err(|_| format!("bad class index in `{s}`"))?;
    Ok((j, parse_torsion(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_range("1..12").unwrap(), 1..=12);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("5..3").is_err());
        assert_eq!(parse_list("1, 2 3").unwrap(), vec![1, 2, 3]);
        assert!(parse_list("").is_err());
        assert_eq!(parse_torsion("4:1,0").unwrap(), Torsion(4, vec![1, 0]));
        assert_eq!(parse_class_torsion("#3=6:1,1,0,0").unwrap(), (3, Torsion(6, vec![1, 1, 0, 0])));
    }
}

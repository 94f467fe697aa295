//! The `detseq` command line: `judge`, `analyze`, `enumerate`, `corpus`.
//!
//! Exit status is 0 for a grammatical phrase or a clean run, 1 for an
//! ungrammatical phrase or a failed check, and 2 for usage and I/O errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::compose::{AgrSource, DetPhrase, UnitKind};
use crate::corpus::{parse_corpus, run_corpus};
use crate::enumerate::{enumerate, oracle_disagreements};
use crate::lexicon::{builtin_lexicon, classify_cardinal, load_lexicon, Lexicon};
use crate::parser::{judge, Judgment, NpAnalysis};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "detseq", version, about = "Judge English determiner sequences")]
pub struct Cli {
    /// Lexicon file merged over the built-in lexicon.
    #[arg(long, global = true, value_name = "PATH")]
    pub lexicon: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Judge a noun phrase.
    Judge { phrase: String },
    /// Show the feature percolation behind each analysis.
    Analyze { phrase: String },
    /// Enumerate determiner sequences and print one TSV row per sequence.
    Enumerate {
        /// Comma-separated determiners (cardinals allowed).
        #[arg(long, value_delimiter = ',', conflicts_with = "core")]
        dets: Vec<String>,
        /// Use the table determiners plus one cardinal.
        #[arg(long)]
        core: bool,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value = "people")]
        noun: String,
        /// Also run the naive judge; exit 1 on any disagreement.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Run a regression corpus.
    Corpus { path: PathBuf },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn lexicon_for(cli: &Cli) -> Result<Lexicon, String> {
    match &cli.lexicon {
        None => Ok(builtin_lexicon()),
        Some(path) => {
            let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
            load_lexicon(file).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, String> {
    let lexicon = lexicon_for(cli)?;
    let mut buf = String::new();
    let code = match &cli.command {
        Command::Judge { phrase } => cmd_judge(phrase, &lexicon, cli.format, &mut buf)?,
        Command::Analyze { phrase } => cmd_analyze(phrase, &lexicon, cli.format, &mut buf)?,
        Command::Enumerate {
            dets,
            core,
            max_len,
            noun,
            check_oracle,
        } => cmd_enumerate(&lexicon, dets, *core, *max_len, noun, *check_oracle, &mut buf)?,
        Command::Corpus { path } => cmd_corpus(path, &lexicon, &mut buf)?,
    };
    out.write_all(buf.as_bytes()).map_err(|e| e.to_string())?;
    Ok(code)
}

const PARTITIVE_NOTE: &str =
    "note: partitive reading only; the prepositional-phrase reading of `of` is not analyzed";

fn cmd_judge(phrase: &str, lexicon: &Lexicon, format: Format, out: &mut String) -> Result<i32, String> {
    let judgment = judge(phrase, lexicon).map_err(|e| e.to_string())?;
    write_judgment(phrase, &judgment, format, out);
    Ok(if judgment.is_grammatical() {
        EXIT_OK
    } else {
        EXIT_REJECTED
    })
}

fn write_judgment(phrase: &str, judgment: &Judgment, format: Format, out: &mut String) {
    match (judgment, format) {
        (Judgment::Grammatical(analyses), Format::Text) => {
            out.push_str(&format!("GRAMMATICAL: {phrase}\n"));
            for (i, a) in analyses.iter().enumerate() {
                out.push_str(&format!(
                    "analysis {}: agr={} wh={} {}\n",
                    i + 1,
                    a.np_agr,
                    a.np_wh,
                    a.bracketed()
                ));
            }
            if analyses.iter().any(NpAnalysis::has_partitive) {
                out.push_str(PARTITIVE_NOTE);
                out.push('\n');
            }
        }
        (Judgment::Grammatical(analyses), Format::Tsv) => {
            for a in analyses {
                out.push_str(&format!(
                    "GRAMMATICAL\t{phrase}\t{}\t{}\t{}\n",
                    a.np_agr,
                    a.np_wh,
                    a.bracketed()
                ));
            }
        }
        (Judgment::Ungrammatical(clashes), Format::Text) => {
            out.push_str(&format!("UNGRAMMATICAL: {phrase}\n"));
            for (i, c) in clashes.iter().enumerate() {
                out.push_str(&format!("clash {}: {} {}\n", i + 1, c.stage, c));
            }
        }
        (Judgment::Ungrammatical(clashes), Format::Tsv) => {
            for c in clashes {
                out.push_str(&format!(
                    "UNGRAMMATICAL\t{phrase}\t{}\t{}\t{}\t{}\n",
                    c.stage,
                    c.feature.map_or("", |f| f.name()),
                    c.position,
                    c
                ));
            }
        }
    }
}

fn cmd_analyze(phrase: &str, lexicon: &Lexicon, format: Format, out: &mut String) -> Result<i32, String> {
    let judgment = judge(phrase, lexicon).map_err(|e| e.to_string())?;
    let Judgment::Grammatical(analyses) = &judgment else {
        write_judgment(phrase, &judgment, format, out);
        return Ok(EXIT_REJECTED);
    };
    out.push_str(&format!("phrase: {phrase}\n"));
    for (i, a) in analyses.iter().enumerate() {
        out.push_str(&format!("analysis {}: {}\n", i + 1, a.bracketed()));
        if let Some(d) = &a.detp {
            write_trace(d, out);
        } else {
            out.push_str("  no determiner\n");
        }
        for (adv, target, reason) in a.adverb_notes() {
            out.push_str(&format!("  adverb {adv} \u{2192} {target} ({reason})\n"));
        }
        out.push_str(&format!("  np: agr={} wh={}\n", a.np_agr, a.np_wh));
    }
    if analyses.iter().any(NpAnalysis::has_partitive) {
        out.push_str(PARTITIVE_NOTE);
        out.push('\n');
    }
    Ok(EXIT_OK)
}

fn write_trace(d: &DetPhrase, out: &mut String) {
    let innermost = d.units.last().unwrap();
    let initial_root = d.trace.first().map_or(d.root, |s| s.foot_root_before);
    out.push_str(&format!(
        "  leaf {}: root {}\n",
        innermost.label(),
        initial_root
    ));
    for (i, step) in d.trace.iter().enumerate() {
        let restriction = step
            .anchor
            .selection
            .map(|s| s.to_pairs())
            .unwrap_or_default();
        let agr = match step.agr_source {
            AgrSource::Foot => format!(
                "agr source = foot({})={}",
                step.foot_label, step.foot_root_before.agr
            ),
            AgrSource::AnchorAndFoot => format!(
                "agr source = foot({})={}, agreement check {}\u{2293}{}={}",
                step.foot_label,
                step.foot_root_before.agr,
                step.anchor.own.agr,
                step.foot_root_before.agr,
                step.root_after.agr
            ),
        };
        out.push_str(&format!(
            "  step {}: adjoin {} onto {}; restriction [{}] satisfied; root {}; {}\n",
            i + 1,
            step.anchor.label(),
            step.foot_label,
            restriction,
            step.root_after,
            agr
        ));
    }
    out.push_str(&format!("  adjunction steps: {}\n", d.trace.len()));
    for unit in &d.units {
        match &unit.kind {
            UnitKind::Genitive(np) => {
                out.push_str(&format!(
                    "  embedded NP {}: agr={} wh={}\n",
                    np.bracketed(),
                    np.np_agr,
                    np.np_wh
                ));
            }
            UnitKind::Partitive { inner, head } => {
                let head = head.as_ref().map_or("-".to_string(), |h| format!("{} {}", h.lemma, h.agr));
                let inner = inner.as_ref().map_or("-".to_string(), |i| i.bracketed());
                out.push_str(&format!("  partitive: inner {inner}, head {head}\n"));
            }
            _ => {}
        }
    }
}

fn cmd_enumerate(
    lexicon: &Lexicon,
    dets: &[String],
    core: bool,
    max_len: usize,
    noun: &str,
    check_oracle: bool,
    out: &mut String,
) -> Result<i32, String> {
    let inventory = if core {
        lexicon.core_inventory()
    } else if dets.is_empty() {
        lexicon.full_inventory()
    } else {
        dets.iter()
            .map(|d| {
                lexicon
                    .determiner(d)
                    .or_else(|| classify_cardinal(d))
                    .ok_or_else(|| format!("unknown determiner `{d}`"))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let noun_entry = lexicon
        .noun(noun)
        .ok_or_else(|| format!("unknown noun `{noun}`"))?;
    let report = enumerate(&inventory, max_len, &noun_entry).map_err(|e| e.to_string())?;
    out.push_str(&report.to_tsv());
    if check_oracle {
        let disagreements = oracle_disagreements(&inventory, &report, &noun_entry);
        if !disagreements.is_empty() {
            for seq in &disagreements {
                out.push_str(&format!("# oracle disagrees: {}\n", seq.join(" ")));
            }
            return Ok(EXIT_REJECTED);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_corpus(path: &PathBuf, lexicon: &Lexicon, out: &mut String) -> Result<i32, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cases = parse_corpus(&text).map_err(|e| e.to_string())?;
    let report = run_corpus(&cases, lexicon);
    for o in &report.outcomes {
        let status = if o.case.expectation == crate::corpus::Expectation::KnownDivergent {
            "DIVERGENT"
        } else if o.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!("{status}\t{}\t{}", o.case.expectation, o.case.phrase));
        if let Some(diff) = &o.diff {
            out.push_str(&format!("\t{diff}"));
        }
        out.push('\n');
    }
    out.push_str(&report.summary());
    out.push('\n');
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_REJECTED
    })
}

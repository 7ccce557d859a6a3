//! `xtrie`: entropy statistics, compression and XBWT indexing for tries.
//!
//! Exit codes: 0 success, 2 usage error (including an exceeded enumeration
//! cap), 3 malformed input, 4 violated internal invariant.

mod input;
mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use xtrie_core::coder::{compress_with_interval, decompress, model_size_bits, read_container, write_container};
use xtrie_core::combinatorics::{
    canonical_rotation, count_all_tries, count_tries, distributions, enumerate_tries, matrix_count, matrix_to_trie,
    rotate, trie_to_matrix, CombinatoricsError, DEFAULT_ENUMERATION_CAP,
};
use xtrie_core::entropy::{entropy_report, le_tol};
use xtrie_core::gen::{letters, random_dictionary, random_trie};
use xtrie_core::trie::{parse_symbol, write_edge_list, Alphabet, SymbolDistribution, SymbolMode, Trie};
use xtrie_core::xbwt::{build_index, read_index, space_report, write_index, ComplementPolicy, IndexOptions, XbwtIndex};
use xtrie_core::DegreeMatrix;

use input::{load_trie, pattern_symbols, read_bytes, InputFormat};
use report::Report;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Invariant(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Invariant(m) => m,
        }
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(name = "xtrie", version, about = "Entropy, compression and XBWT indexing for tries")]
struct Cli {
    /// Print `key=value` lines instead of aligned text.
    #[arg(long, global = true)]
    machine: bool,
    /// Seed for every randomized operation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlphabetArg {
    Bytes,
    Utf8,
}

impl From<AlphabetArg> for SymbolMode {
    fn from(a: AlphabetArg) -> Self {
        match a {
            AlphabetArg::Bytes => SymbolMode::Bytes,
            AlphabetArg::Utf8 => SymbolMode::Utf8,
        }
    }
}

#[derive(Args)]
struct TrieInput {
    /// Dictionary (one string per line) or edge-list file; `-` reads standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    /// How dictionary lines map to symbols.
    #[arg(long, value_enum, default_value_t = AlphabetArg::Bytes)]
    alphabet: AlphabetArg,
}

impl TrieInput {
    fn load(&self) -> Result<Trie, CliError> {
        load_trie(&self.input, self.format, self.alphabet.into())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Entropy profile, runs, index space and the inequalities relating them.
    Stats {
        #[command(flatten)]
        src: TrieInput,
        /// Largest context order reported.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        block_size: Option<usize>,
    },
    /// Arithmetic-code a trie into a TAC1 container.
    Compress {
        #[command(flatten)]
        src: TrieInput,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Decode a TAC1 container into the edge-list normal form.
    Decompress {
        input: PathBuf,
        /// Write the edge list here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build an XBW1 index.
    Index {
        #[command(flatten)]
        src: TrieInput,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        block_size: Option<usize>,
        /// `auto`, `never`, or a symbol whose bitvector is stored complemented.
        #[arg(long, default_value = "auto")]
        complement: String,
    },
    /// Count nodes whose root path ends with a pattern.
    Query {
        index: PathBuf,
        /// The pattern; omit when using `--batch`.
        pattern: Option<OsString>,
        /// File with one pattern per line (`-` for standard input); prints
        /// `pattern TAB count TAB i TAB j` per line.
        #[arg(long)]
        batch: Option<PathBuf>,
        /// Expected symbol mode of the index; a mismatch is an error.
        #[arg(long, value_enum)]
        alphabet: Option<AlphabetArg>,
    },
    /// Co-lex rank of the node spelling a string from the root, or `absent`.
    Prefix {
        index: PathBuf,
        string: OsString,
        #[arg(long, value_enum)]
        alphabet: Option<AlphabetArg>,
    },
    /// Count (and optionally list) the tries with a given symbol distribution.
    Enumerate {
        /// Number of nodes.
        n: u64,
        /// Edge counts as `symbol:count`; symbols absent from the list do not occur.
        dist: Vec<String>,
        /// Count over all distributions on this many symbols instead.
        #[arg(long, conflicts_with = "dist")]
        sigma: Option<usize>,
        /// Print every trie as an edge list.
        #[arg(long)]
        list: bool,
        /// Largest number of candidate matrices examined by `--list`.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Round-trip a degree matrix (or a trie with `--trie`) through the bijection.
    Bijection {
        /// Matrix text (`σ n` header, then σ rows of 0/1), or a trie with `--trie`.
        input: PathBuf,
        #[arg(long)]
        trie: bool,
    },
    /// Generate a random trie (edge list) or dictionary.
    Gen {
        #[command(subcommand)]
        what: GenKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Trie {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        sigma: usize,
    },
    Dict {
        #[arg(long, default_value_t = 100)]
        words: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        sigma: usize,
    },
}

fn write_file(path: &Path, data: &[u8]) -> CliResult {
    fs::write(path, data).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(text: &str) {
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn symbol_name(alphabet: &Alphabet, c: usize) -> String {
    alphabet.display_symbol(c)
}

fn cmd_stats(src: &TrieInput, k_max: usize, block: Option<usize>, machine: bool) -> CliResult {
    let t = src.load()?;
    let alphabet = t.alphabet().clone();
    let entropy = entropy_report(&t, k_max);
    let mut r = Report::new();
    let mut ok = true;
    r.put("n", t.len());
    r.put("sigma", t.sigma());
    for (c, count) in entropy.distribution.iter().enumerate() {
        r.put(format!("n_c.{}", symbol_name(&alphabet, c)), count);
    }
    r.put("tries_with_distribution", &entropy.tries_with_distribution);
    r.num("h_wc", entropy.h_wc);
    r.num("h_wc.lower", entropy.h_wc_lower);
    r.num("h_wc.upper", entropy.h_wc_upper);
    ok &= r.check("check.h_wc_sandwich", entropy.h_wc_bounds_hold);
    for (i, level) in entropy.levels.iter().enumerate() {
        let k = level.k;
        r.num(format!("nh.{k}"), level.nh_k);
        r.num(format!("nh_label.{k}"), level.nh_label_k);
        r.put(format!("contexts.{k}"), level.contexts);
        ok &= r.check(format!("check.label_bound.{k}"), level.label_bound_holds);
        ok &= r.check(format!("check.runs_bound.{k}"), level.runs_bound_holds);
        if i > 0 {
            ok &= r.check(format!("check.monotone.{k}"), le_tol(level.nh_k, entropy.levels[i - 1].nh_k));
        }
    }
    r.put("runs", entropy.runs.r);
    for (c, runs) in entropy.runs.per_symbol.iter().enumerate() {
        r.put(format!("runs.{}", symbol_name(&alphabet, c)), runs);
    }
    let idx = build_index(&t, IndexOptions { block_size: block, ..Default::default() });
    let space = space_report(&idx, &t, k_max);
    r.put("index.block_size", space.block_size);
    r.put("index.complemented", idx.complemented().map_or("none".to_string(), |c| symbol_name(&alphabet, c)));
    r.put("index.payload_bits", space.payload_bits);
    r.put("index.nonempty_blocks", space.nonempty_blocks);
    r.put("index.directory_bits", space.overhead.block_directory_bits);
    r.put("index.c_array_bits", space.overhead.c_array_bits);
    r.put("index.overlay_bits", space.overhead.overlay_bits);
    r.put("index.naive_label_bits", space.naive_label_bits);
    for level in &space.levels {
        r.num(format!("space.bound.{}", level.k), level.bound);
        ok &= r.check(format!("check.space_bound.{}", level.k), level.holds);
    }
    r.num("sum_log_binomials", space.sum_log_binomials);
    r.num("succinct_floor", space.succinct_floor);
    let balanced = entropy.distribution.iter().all(|&c| 2 * c <= t.len() as u64);
    if balanced {
        ok &= r.check("check.succinct_floor", le_tol(space.succinct_floor, space.sum_log_binomials));
    } else {
        r.put("check.succinct_floor", "n/a");
    }
    r.check("checks", ok);
    emit(&r.render(machine));
    if ok {
        Ok(())
    } else {
        Err(CliError::Invariant("a proven inequality failed; see the check.* lines".into()))
    }
}

fn cmd_compress(src: &TrieInput, output: &Path, k: usize, machine: bool) -> CliResult {
    let t = src.load()?.with_effective_alphabet();
    let (code, interval) = compress_with_interval(&t, k);
    let nh = xtrie_core::entropy::empirical_entropy(&t, k);
    let bytes = write_container(&code);
    write_file(output, &bytes)?;
    let bound = (nh - 1e-9 * nh.max(1.0)).ceil().max(0.0) as u64 + 2;
    let mut r = Report::new();
    r.put("n", t.len());
    r.put("sigma", t.sigma());
    r.put("k", k);
    r.num("nh", nh);
    r.num("neg_log2_s", interval.neg_log2_size());
    r.put("d", code.d);
    r.put("d.bound", bound);
    let ok = r.check("check.length_bound", code.d <= bound);
    r.put("model.contexts", code.model.len());
    r.put("model.budget_bits", model_size_bits(t.sigma(), k, t.len()));
    r.put("container_bytes", bytes.len());
    emit(&r.render(machine));
    if ok {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("d = {} exceeds ⌈nH_k⌉ + 2 = {bound}", code.d)))
    }
}

fn cmd_decompress(input: &Path, output: Option<&Path>, machine: bool) -> CliResult {
    let data = read_bytes(input)?;
    let code = read_container(&data).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let t = decompress(&code).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let text = write_edge_list(&t);
    match output {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            let mut r = Report::new();
            r.put("n", t.len());
            r.put("sigma", t.sigma());
            r.put("k", code.k);
            r.put("d", code.d);
            emit(&r.render(machine));
        }
        None => emit(&text),
    }
    Ok(())
}

fn parse_complement(spec: &str, alphabet: &Alphabet) -> Result<ComplementPolicy, CliError> {
    match spec {
        "auto" => Ok(ComplementPolicy::Auto),
        "never" => Ok(ComplementPolicy::Never),
        token => {
            parse_symbol(token).and_then(|s| alphabet.index_of(s)).map(ComplementPolicy::Symbol).ok_or_else(|| {
                CliError::Usage(format!("--complement: `{token}` is not auto, never or a symbol of the trie"))
            })
        }
    }
}

fn cmd_index(src: &TrieInput, output: &Path, block: Option<usize>, complement: &str, machine: bool) -> CliResult {
    if block == Some(0) {
        return Err(CliError::Usage("--block-size must be positive".into()));
    }
    let t = src.load()?;
    let options = IndexOptions {
        block_size: block,
        complement: parse_complement(complement, t.alphabet())?,
        mode: src.alphabet.into(),
    };
    let idx = build_index(&t, options);
    let bytes = write_index(&idx);
    write_file(output, &bytes)?;
    let overhead = idx.overhead();
    let mut r = Report::new();
    r.put("n", idx.len());
    r.put("sigma", idx.sigma());
    r.put("block_size", idx.block_size());
    r.put("complemented", idx.complemented().map_or("none".to_string(), |c| symbol_name(idx.alphabet(), c)));
    r.put("payload_bits", idx.payload_bits());
    r.put("overhead_bits", overhead.total());
    r.put("runs", idx.runs().r);
    r.put("index_bytes", bytes.len());
    emit(&r.render(machine));
    Ok(())
}

fn open_index(path: &Path, expected: Option<AlphabetArg>) -> Result<XbwtIndex, CliError> {
    let data = read_bytes(path)?;
    let idx = read_index(&data).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if let Some(want) = expected {
        let want = SymbolMode::from(want);
        if want != idx.mode() {
            return Err(CliError::Input(format!(
                "index was built with --alphabet {} but the query asks for {}",
                mode_name(idx.mode()),
                mode_name(want)
            )));
        }
    }
    Ok(idx)
}

fn mode_name(mode: SymbolMode) -> &'static str {
    match mode {
        SymbolMode::Bytes => "bytes",
        SymbolMode::Utf8 => "utf8",
    }
}

fn cmd_query(
    index: &Path,
    pattern: Option<&OsString>,
    batch: Option<&Path>,
    alphabet: Option<AlphabetArg>,
    machine: bool,
) -> CliResult {
    let idx = open_index(index, alphabet)?;
    match (pattern, batch) {
        (Some(p), None) => {
            let res = idx.count(&pattern_symbols(p.as_encoded_bytes(), idx.mode())?);
            let mut r = Report::new();
            r.put("count", res.count);
            r.put("i", res.i);
            r.put("j", res.j);
            emit(&r.render(machine));
            Ok(())
        }
        (None, Some(path)) => {
            let data = read_bytes(path)?;
            let mut lines: Vec<&[u8]> = data.split(|&b| b == b'\n').collect();
            if data.ends_with(b"\n") || data.is_empty() {
                lines.pop();
            }
            let mut out = Vec::new();
            for line in lines {
                let res = idx.count(&pattern_symbols(line, idx.mode())?);
                out.extend_from_slice(line);
                out.extend_from_slice(format!("\t{}\t{}\t{}\n", res.count, res.i, res.j).as_bytes());
            }
            let _ = std::io::stdout().write_all(&out);
            Ok(())
        }
        _ => Err(CliError::Usage("give exactly one of a pattern or --batch".into())),
    }
}

fn cmd_prefix(index: &Path, string: &OsString, alphabet: Option<AlphabetArg>, machine: bool) -> CliResult {
    let idx = open_index(index, alphabet)?;
    let rank = idx.prefix_query(&pattern_symbols(string.as_encoded_bytes(), idx.mode())?);
    let mut r = Report::new();
    r.put("rank", rank.map_or("absent".to_string(), |x| x.to_string()));
    emit(&r.render(machine));
    Ok(())
}

fn parse_distribution(n: u64, items: &[String]) -> Result<(Alphabet, SymbolDistribution), CliError> {
    let mut pairs = Vec::with_capacity(items.len());
    for item in items {
        let (sym, count) =
            item.rsplit_once(':').ok_or_else(|| CliError::Usage(format!("`{item}`: expected symbol:count")))?;
        let sym = parse_symbol(sym).ok_or_else(|| CliError::Usage(format!("`{item}`: bad symbol")))?;
        let count: u64 = count.parse().map_err(|_| CliError::Usage(format!("`{item}`: bad count")))?;
        pairs.push((sym, count));
    }
    pairs.sort_unstable();
    let alphabet = Alphabet::new(pairs.iter().map(|p| p.0).collect())
        .map_err(|e| CliError::Usage(format!("distribution: {e}")))?;
    if let Some(&(s, c)) = pairs.iter().find(|p| p.1 > n) {
        return Err(CliError::Usage(format!("symbol {s} has {c} edges but a trie with {n} nodes allows at most {n}")));
    }
    let dist = SymbolDistribution::new(n, pairs.iter().map(|p| p.1).collect())
        .map_err(|e| CliError::Usage(format!("distribution: {e}")))?;
    Ok((alphabet, dist))
}

fn cap_error(e: CombinatoricsError) -> CliError {
    match e {
        CombinatoricsError::CapExceeded { .. } => {
            CliError::Usage(format!("{e}; drop --list for count-only mode or raise --cap"))
        }
        other => CliError::Usage(other.to_string()),
    }
}

fn cmd_enumerate(n: u64, dist: &[String], sigma: Option<usize>, list: bool, cap: u64, machine: bool) -> CliResult {
    if n == 0 {
        return Err(CliError::Usage("a trie has at least one node".into()));
    }
    let groups: Vec<(Alphabet, SymbolDistribution)> = match sigma {
        Some(s) => distributions(n, s).into_iter().map(|d| (letters(s), d)).collect(),
        None => vec![parse_distribution(n, dist)?],
    };
    let count = match sigma {
        Some(s) => count_all_tries(n, s as u64),
        None => count_tries(&groups[0].1),
    };
    let mut listing = String::new();
    if list {
        let mut budget = cap;
        let mut found = 0u64;
        for (alphabet, d) in &groups {
            let tries = enumerate_tries(d, alphabet, budget).map_err(cap_error)?;
            budget = budget.saturating_sub(u64::try_from(matrix_count(d)).unwrap_or(u64::MAX));
            for t in tries {
                listing.push('\n');
                listing.push_str(&write_edge_list(&t));
                found += 1;
            }
        }
        if count != BigUint::from(found) {
            return Err(CliError::Invariant(format!("enumerated {found} tries but the formula gives {count}")));
        }
    }
    let mut r = Report::new();
    r.put("n", n);
    match sigma {
        Some(s) => r.put("sigma", s),
        None => r.put("distribution", dist.join(",")),
    }
    r.put("count", &count);
    emit(&r.render(machine));
    emit(&listing);
    Ok(())
}

fn cmd_bijection(input: &Path, from_trie: bool, machine: bool) -> CliResult {
    let mut r = Report::new();
    let bad_input = |e: CombinatoricsError| CliError::Input(format!("{}: {e}", input.display()));
    let (m, original) = if from_trie {
        let t = load_trie(input, InputFormat::Auto, SymbolMode::Bytes)?.with_effective_alphabet();
        (trie_to_matrix(&t), Some(t))
    } else {
        let data = read_bytes(input)?;
        let text = std::str::from_utf8(&data).map_err(|e| CliError::Input(format!("matrix is not UTF-8: {e}")))?;
        (DegreeMatrix::parse_text(text).map_err(bad_input)?, None)
    };
    let alphabet = original.as_ref().map_or_else(|| letters(m.sigma()), |t| t.alphabet().clone());
    let path = m.lukasiewicz();
    r.put("sigma", m.sigma());
    r.put("n", m.n());
    r.put("l", path.l.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    r.put("valid", path.is_valid());
    if let Some(i) = path.first_violation() {
        r.put("first_violation", i);
    }
    let rot = canonical_rotation(&m);
    r.put("rotation", rot);
    let rotated = rotate(&m, rot);
    r.put("rotated", rotated.rows_text().join(","));
    let t = matrix_to_trie(&rotated, &alphabet)
        .map_err(|e| CliError::Invariant(format!("canonical rotation rejected: {e}")))?;
    let back = trie_to_matrix(&t);
    let ok = r.check("check.round_trip", back == rotated && original.as_ref().is_none_or(|o| *o == t));
    emit(&r.render(machine));
    emit(&format!("\n{}", write_edge_list(&t)));
    if ok {
        Ok(())
    } else {
        Err(CliError::Invariant("bijection round trip failed".into()))
    }
}

fn cmd_gen(what: &GenKind, seed: u64) -> CliResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *what {
        GenKind::Trie { n, sigma } => {
            if n == 0 || (n > 1 && sigma == 0) {
                return Err(CliError::Usage("need n ≥ 1, and σ ≥ 1 when n > 1".into()));
            }
            emit(&write_edge_list(&random_trie(&mut rng, n, sigma)));
        }
        GenKind::Dict { words, max_len, sigma } => {
            if sigma == 0 || sigma > 26 {
                return Err(CliError::Usage("dictionaries use 1 to 26 letters".into()));
            }
            let mut out = String::new();
            for w in random_dictionary(&mut rng, words, max_len, sigma) {
                out.extend(w.into_iter().filter_map(char::from_u32));
                out.push('\n');
            }
            emit(&out);
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult {
    let m = cli.machine;
    match &cli.command {
        Command::Stats { src, k, block_size } => {
            if *block_size == Some(0) {
                return Err(CliError::Usage("--block-size must be positive".into()));
            }
            cmd_stats(src, *k, *block_size, m)
        }
        Command::Compress { src, output, k } => cmd_compress(src, output, *k, m),
        Command::Decompress { input, output } => cmd_decompress(input, output.as_deref(), m),
        Command::Index { src, output, block_size, complement } => cmd_index(src, output, *block_size, complement, m),
        Command::Query { index, pattern, batch, alphabet } => {
            cmd_query(index, pattern.as_ref(), batch.as_deref(), *alphabet, m)
        }
        Command::Prefix { index, string, alphabet } => cmd_prefix(index, string, *alphabet, m),
        Command::Enumerate { n, dist, sigma, list, cap } => cmd_enumerate(*n, dist, *sigma, *list, *cap, m),
        Command::Bijection { input, trie } => cmd_bijection(input, *trie, m),
        Command::Gen { what } => cmd_gen(what, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    std::panic::set_hook(Box::new(|info| eprintln!("xtrie: internal invariant violated: {info}")));
    match catch_unwind(AssertUnwindSafe(|| run(&cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("xtrie: {}", e.message());
            ExitCode::from(e.code())
        }
        Err(_) => ExitCode::from(4),
    }
}

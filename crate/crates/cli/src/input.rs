//! Reading tries from dictionaries or edge lists.

use std::fs;
use std::io::Read;
use std::path::Path;

use xtrie_core::trie::{parse_dictionary, parse_edge_list, Alphabet, SymbolMode, Trie};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    /// Edge list when the first non-empty line is `n σ`, dictionary otherwise.
    Auto,
    Dict,
    Edges,
}

/// Reads a file, or standard input for `-`.
pub fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Usage(format!("cannot read standard input: {e}")))?;
        return Ok(buf);
    }
    fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn looks_like_edge_list(data: &[u8]) -> bool {
    let Ok(text) = std::str::from_utf8(data) else {
        return false;
    };
    let Some(first) = text.lines().map(str::trim).find(|l| !l.is_empty()) else {
        return false;
    };
    let fields: Vec<&str> = first.split_whitespace().collect();
    fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok())
}

pub fn dictionary_trie(data: &[u8], mode: SymbolMode) -> Result<Trie, CliError> {
    let strings = parse_dictionary(data, mode).map_err(|e| CliError::Input(format!("dictionary is not UTF-8: {e}")))?;
    let alphabet = Alphabet::effective(strings.iter().flatten().copied());
    Trie::build_from_dictionary(&strings, alphabet).map_err(|e| CliError::Input(e.to_string()))
}

pub fn load_trie(path: &Path, format: InputFormat, mode: SymbolMode) -> Result<Trie, CliError> {
    let data = read_bytes(path)?;
    let edges = match format {
        InputFormat::Auto => looks_like_edge_list(&data),
        InputFormat::Dict => false,
        InputFormat::Edges => true,
    };
    if edges {
        let text = std::str::from_utf8(&data).map_err(|e| CliError::Input(format!("edge list is not UTF-8: {e}")))?;
        parse_edge_list(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    } else {
        dictionary_trie(&data, mode)
    }
}

/// Pattern bytes mapped to symbols under `mode`.
pub fn pattern_symbols(bytes: &[u8], mode: SymbolMode) -> Result<Vec<u32>, CliError> {
    match mode {
        SymbolMode::Bytes => Ok(bytes.iter().map(|&b| u32::from(b)).collect()),
        SymbolMode::Utf8 => std::str::from_utf8(bytes)
            .map(|s| s.chars().map(|c| c as u32).collect())
            .map_err(|e| CliError::Input(format!("pattern is not UTF-8: {e}"))),
    }
}

//! Parsing of word lists and target-group descriptions.

use freesep_core::{Alphabet, FiniteGroup, Word};

use crate::CliError;

pub fn parse_word(alphabet: &Alphabet, field: &str, text: &str) -> Result<Word, CliError> {
    alphabet.parse(text).map_err(|source| CliError::Parse {
        field: field.to_string(),
        text: text.to_string(),
        source,
    })
}

pub fn parse_words(alphabet: &Alphabet, field: &str, texts: &[String]) -> Result<Vec<Word>, CliError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_word(alphabet, &format!("{field}[{i}]"), t))
        .collect()
}

/// Expands `ut3`, `ut4`, `heis`, `c<k>` and `c<k1>-<k2>` for one prime.
pub fn parse_targets(tokens: &[String], p: u64) -> Result<Vec<FiniteGroup>, CliError> {
    let mut out = Vec::new();
    for token in tokens {
        let t = token.trim().to_ascii_lowercase();
        let bad = || CliError::Usage(format!("unrecognized target {token:?}"));
        match t.as_str() {
            "ut3" | "heis" => out.push(FiniteGroup::unitriangular(3, p)?),
            "ut4" => out.push(FiniteGroup::unitriangular(4, p)?),
            _ => {
                let range = t.strip_prefix('c').ok_or_else(bad)?;
                let (lo, hi) = match range.split_once('-') {
                    Some((lo, hi)) => (lo, hi),
                    None => (range, range),
                };
                let lo: u32 = lo.parse().map_err(|_| bad())?;
                let hi: u32 = hi.parse().map_err(|_| bad())?;
                if lo == 0 || lo > hi {
                    return Err(bad());
                }
                for k in lo..=hi {
                    out.push(FiniteGroup::cyclic(p, k)?);
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of `FiniteGroup`'s display form: `C(p^k)` or `UT(n,p)`.
pub fn parse_group_name(name: &str) -> Result<FiniteGroup, CliError> {
    let bad = || CliError::Usage(format!("unrecognized group name {name:?}"));
    if let Some(inner) = name.strip_prefix("C(").and_then(|s| s.strip_suffix(')')) {
        let (p, k) = inner.split_once('^').ok_or_else(bad)?;
        return Ok(FiniteGroup::cyclic(
            p.parse().map_err(|_| bad())?,
            k.parse().map_err(|_| bad())?,
        )?);
    }
    if let Some(inner) = name.strip_prefix("UT(").and_then(|s| s.strip_suffix(')')) {
        let (n, p) = inner.split_once(',').ok_or_else(bad)?;
        return Ok(FiniteGroup::unitriangular(
            n.parse().map_err(|_| bad())?,
            p.parse().map_err(|_| bad())?,
        )?);
    }
    Err(bad())
}

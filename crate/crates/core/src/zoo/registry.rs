//! Zoo shifts addressed by name.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{
    full_shift, golden_mean, periodic_orbit, product_shift, sft, single_one, sturmian_window,
    substitution::fibonacci, union_shift, ZooShift,
};
use crate::error::{Result, ShiftError};
use crate::grid::{parse_pattern, Alphabet, Group};
use crate::streams::{parse_rational, ApproxReal};

/// The accepted name forms.
pub fn registry_names() -> &'static [&'static str] {
    &[
        "full",
        "full:<letters>",
        "golden-mean",
        "sft:<file>",
        "sturmian:<lo>,<hi>",
        "fibonacci",
        "orbit:<word>",
        "single-one",
        "product:<a>,<b>",
        "union:<a>,<b>",
    ]
}

/// Split `a,b` at the top-level comma; square brackets group, and are
/// stripped from each side.
pub fn split_arguments(text: &str) -> Result<(String, String)> {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                let strip = |s: &str| {
                    let s = s.trim();
                    if s.starts_with('[') && s.ends_with(']') {
                        s[1..s.len() - 1].trim().to_string()
                    } else {
                        s.to_string()
                    }
                };
                return Ok((strip(&text[..i]), strip(&text[i + 1..])));
            }
            _ => {}
        }
    }
    Err(ShiftError::Parse(format!("expected two comma separated arguments in `{text}`")))
}

fn endpoint(text: &str) -> Result<ApproxReal> {
    match text.trim() {
        "golden-conjugate" | "phi'" => Ok(ApproxReal::golden_ratio_conjugate()),
        t => Ok(ApproxReal::rational(parse_rational(t)?)),
    }
}

/// A shift of finite type from text: one forbidden pattern per line, `#`
/// starts a comment, and an optional `alphabet <letters>` line declares the
/// alphabet (binary otherwise).
pub fn parse_sft_text(text: &str, label: &str) -> Result<ZooShift> {
    let mut alphabet = Alphabet::binary();
    let mut lines: Vec<&str> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet") {
            let rest = rest.trim_start_matches(':').trim();
            let names: Vec<&str> = rest.split_whitespace().collect();
            alphabet = if names.len() == 1 {
                Alphabet::from_chars(names[0])?
            } else {
                Alphabet::new(names)?
            };
            continue;
        }
        lines.push(line);
    }
    let forbidden = lines
        .iter()
        .map(|l| parse_pattern(&Group::Integers, &alphabet, l))
        .collect::<Result<Vec<_>>>()?;
    sft(alphabet, forbidden, label)
}

/// Resolve a registry name. `read` loads the files named by `sft:<file>`.
pub fn lookup(name: &str, read: &dyn Fn(&str) -> Result<String>) -> Result<ZooShift> {
    let name = name.trim();
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head, arg) {
        ("full", None) => Ok(full_shift(Alphabet::binary())),
        ("full", Some(letters)) => Ok(full_shift(Alphabet::from_chars(letters)?)),
        ("golden-mean", None) => Ok(golden_mean()),
        ("fibonacci", None) => Ok(fibonacci()),
        ("single-one", None) => Ok(single_one()),
        ("sft", Some(path)) => parse_sft_text(&read(path)?, name),
        ("orbit", Some(word)) => {
            let a = Alphabet::binary();
            periodic_orbit(a.clone(), &a.parse_word(word)?)
        }
        ("sturmian", Some(args)) => {
            let (lo, hi) = split_arguments(args)?;
            let mut z = sturmian_window(endpoint(&lo)?, endpoint(&hi)?)?;
            z.label = name.to_string();
            z.presentation = z.presentation.with_label(name);
            Ok(z)
        }
        ("product", Some(args)) => {
            let (a, b) = split_arguments(args)?;
            product_shift(&lookup(&a, read)?, &lookup(&b, read)?)
        }
        ("union", Some(args)) => {
            let (a, b) = split_arguments(args)?;
            union_shift(&lookup(&a, read)?, &lookup(&b, read)?)
        }
        _ => Err(ShiftError::Config(format!(
            "unknown shift `{name}`; available: {}",
            registry_names().join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(_: &str) -> Result<String> {
        Err(ShiftError::Config("no files".into()))
    }

    #[test]
    fn names_resolve() {
        for n in [
            "full",
            "golden-mean",
            "fibonacci",
            "single-one",
            "orbit:01",
            "sturmian:0,1/2",
            "sturmian:0,golden-conjugate",
            "product:golden-mean,full:ab",
            "product:[product:full,full],golden-mean",
            "union:golden-mean,orbit:1",
        ] {
            lookup(n, &no_files).unwrap();
        }
        let err = lookup("nope", &no_files).unwrap_err();
        assert!(format!("{err}").contains("golden-mean"));
    }

    #[test]
    fn sft_text() {
        let z = parse_sft_text("# golden\nalphabet 01\n11\n", "g").unwrap();
        assert!(!z.accepts_word(&[1, 1]).unwrap());
        assert!(z.accepts_word(&[1, 0, 1]).unwrap());
    }
}

//! PrefLib strict-order files: SOC (complete) and SOI (incomplete).
//!
//! Reads the current header style (`# NUMBER ALTERNATIVES: 3`, ...) and the
//! older numeric layout. Alternatives are 1-based in files and 0-based in
//! memory.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use committee_core::PreferenceProfile;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] committee_core::Error),
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse {
        line,
        message: message.into(),
    })
}

#[derive(Default)]
struct Header {
    data_type: Option<(usize, String)>,
    alternatives: Option<usize>,
    voters: Option<(usize, usize)>,
    unique: Option<(usize, usize)>,
    names: HashMap<usize, String>,
}

fn parse_count(line: usize, s: &str, what: &str) -> Result<usize, FormatError> {
    s.trim().parse().or_else(|_| {
        err(
            line,
            format!("{what} is not a non-negative integer: {:?}", s.trim()),
        )
    })
}

/// Parses `1,3,2` into 0-based indices.
fn parse_order(line: usize, s: &str, m: usize) -> Result<Vec<usize>, FormatError> {
    if s.contains('{') || s.contains('}') {
        return err(line, "tied alternatives are not supported");
    }
    let mut seen = vec![false; m];
    let mut order = Vec::new();
    for tok in s.split(',') {
        let idx = parse_count(line, tok, "alternative")?;
        if idx == 0 || idx > m {
            return err(line, format!("alternative {idx} outside 1..={m}"));
        }
        if seen[idx - 1] {
            return err(line, format!("alternative {idx} listed twice"));
        }
        seen[idx - 1] = true;
        order.push(idx - 1);
    }
    Ok(order)
}

pub fn read_profile<R: BufRead>(reader: R) -> Result<PreferenceProfile, FormatError> {
    let lines: Vec<String> = reader.lines().collect::<Result<_, _>>()?;
    let first = lines.iter().position(|l| !l.trim().is_empty());
    match first {
        None => err(1, "empty file"),
        Some(i) if lines[i].trim_start().starts_with('#') => read_modern(&lines),
        Some(_) => read_legacy(&lines),
    }
}

fn read_modern(lines: &[String]) -> Result<PreferenceProfile, FormatError> {
    let mut header = Header::default();
    let mut rankings: Vec<Vec<usize>> = Vec::new();
    let mut unique_seen = 0;
    for (i, raw) in lines.iter().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(meta) = text.strip_prefix('#') {
            if !rankings.is_empty() {
                return err(line, "header line after the first ballot");
            }
            let Some((key, value)) = meta.split_once(':') else {
                continue;
            };
            let key = key.trim().to_ascii_uppercase();
            let value = value.trim();
            if key == "DATA TYPE" {
                header.data_type = Some((line, value.to_ascii_lowercase()));
            } else if key == "NUMBER ALTERNATIVES" {
                header.alternatives = Some(parse_count(line, value, "NUMBER ALTERNATIVES")?);
            } else if key == "NUMBER VOTERS" {
                header.voters = Some((line, parse_count(line, value, "NUMBER VOTERS")?));
            } else if key == "NUMBER UNIQUE ORDERS" {
                header.unique = Some((line, parse_count(line, value, "NUMBER UNIQUE ORDERS")?));
            } else if let Some(idx) = key.strip_prefix("ALTERNATIVE NAME ") {
                let idx = parse_count(line, idx, "alternative number")?;
                header.names.insert(idx, value.to_string());
            }
            continue;
        }
        let Some(m) = header.alternatives else {
            return err(line, "ballot before NUMBER ALTERNATIVES");
        };
        let Some((count, order)) = text.split_once(':') else {
            return err(line, "expected `count: a,b,c`");
        };
        let count = parse_count(line, count, "ballot count")?;
        let order = parse_order(line, order, m)?;
        check_type(&header, line, order.len(), m)?;
        unique_seen += 1;
        rankings.extend(std::iter::repeat_n(order, count));
    }
    let Some(m) = header.alternatives else {
        return err(lines.len().max(1), "missing NUMBER ALTERNATIVES");
    };
    finish(header, m, rankings, unique_seen)
}

fn check_type(header: &Header, line: usize, len: usize, m: usize) -> Result<(), FormatError> {
    match header.data_type.as_ref().map(|(_, t)| t.as_str()) {
        Some("soc") if len != m => err(line, format!("SOC ballot lists {len} of {m} alternatives")),
        Some("soc") | Some("soi") | None => Ok(()),
        Some(other) => err(
            header.data_type.as_ref().map_or(line, |d| d.0),
            format!("unsupported data type {other:?}"),
        ),
    }
}

fn finish(
    header: Header,
    m: usize,
    rankings: Vec<Vec<usize>>,
    unique_seen: usize,
) -> Result<PreferenceProfile, FormatError> {
    if let Some((line, n)) = header.voters {
        if n != rankings.len() {
            return err(
                line,
                format!("header says {n} voters, ballots give {}", rankings.len()),
            );
        }
    }
    if let Some((line, u)) = header.unique {
        if u != unique_seen {
            return err(
                line,
                format!("header says {u} unique orders, found {unique_seen}"),
            );
        }
    }
    if rankings.is_empty() {
        return err(1, "no ballots");
    }
    let mut profile = PreferenceProfile::new(m, rankings)?;
    if !header.names.is_empty() {
        let names = (1..=m)
            .map(|i| {
                header
                    .names
                    .get(&i)
                    .cloned()
                    .unwrap_or_else(|| i.to_string())
            })
            .collect();
        profile = profile.with_names(names)?;
    }
    Ok(profile)
}

fn read_legacy(lines: &[String]) -> Result<PreferenceProfile, FormatError> {
    let mut it = lines
        .iter()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, first) = it.next().expect("non-empty");
    let m = parse_count(line, first, "number of alternatives")?;
    let mut header = Header {
        alternatives: Some(m),
        ..Header::default()
    };
    for _ in 0..m {
        let Some((line, text)) = it.next() else {
            return err(lines.len(), "truncated alternative list");
        };
        let Some((idx, name)) = text.split_once(',') else {
            return err(line, "expected `index,name`");
        };
        header.names.insert(
            parse_count(line, idx, "alternative number")?,
            name.trim().to_string(),
        );
    }
    let Some((line, totals)) = it.next() else {
        return err(lines.len(), "missing voter totals");
    };
    let parts: Vec<&str> = totals.split(',').collect();
    if parts.len() != 3 {
        return err(line, "expected `voters,sum of counts,unique orders`");
    }
    header.voters = Some((line, parse_count(line, parts[0], "voters")?));
    header.unique = Some((line, parse_count(line, parts[2], "unique orders")?));
    let mut rankings = Vec::new();
    let mut unique_seen = 0;
    for (line, text) in it {
        let Some((count, order)) = text.split_once(',') else {
            return err(line, "expected `count,a,b,...`");
        };
        let count = parse_count(line, count, "ballot count")?;
        let order = parse_order(line, order, m)?;
        unique_seen += 1;
        rankings.extend(std::iter::repeat_n(order, count));
    }
    finish(header, m, rankings, unique_seen)
}

/// Groups identical ballots: larger groups first, ties by first appearance.
pub fn group_ballots(profile: &PreferenceProfile) -> Vec<(usize, &[usize])> {
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    let mut groups: Vec<(usize, &[usize])> = Vec::new();
    for r in profile.rankings() {
        match index.get(r.as_slice()) {
            Some(&g) => groups[g].0 += 1,
            None => {
                index.insert(r, groups.len());
                groups.push((1, r));
            }
        }
    }
    // stable, so first appearance breaks ties
    groups.sort_by_key(|g| std::cmp::Reverse(g.0));
    groups
}

/// Writes SOC when every ballot is complete, SOI otherwise.
pub fn write_profile<W: Write>(
    profile: &PreferenceProfile,
    mut out: W,
    title: Option<&str>,
) -> std::io::Result<()> {
    let groups = group_ballots(profile);
    let m = profile.num_alternatives();
    let kind = if profile.is_complete() { "soc" } else { "soi" };
    if let Some(title) = title {
        writeln!(out, "# TITLE: {title}")?;
    }
    writeln!(out, "# DATA TYPE: {kind}")?;
    writeln!(out, "# NUMBER ALTERNATIVES: {m}")?;
    writeln!(out, "# NUMBER VOTERS: {}", profile.num_voters())?;
    writeln!(out, "# NUMBER UNIQUE ORDERS: {}", groups.len())?;
    if let Some(names) = profile.names() {
        for (i, name) in names.iter().enumerate() {
            writeln!(out, "# ALTERNATIVE NAME {}: {name}", i + 1)?;
        }
    }
    for (count, order) in groups {
        let order: Vec<String> = order.iter().map(|a| (a + 1).to_string()).collect();
        writeln!(out, "{count}: {}", order.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<PreferenceProfile, FormatError> {
        read_profile(text.as_bytes())
    }

    fn line_of(e: FormatError) -> usize {
        match e {
            FormatError::Parse { line, .. } => line,
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn count_line_expands() {
        let p = parse("# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 3\n5: 1,3,2\n").unwrap();
        assert_eq!(p.num_voters(), 5);
        assert!(p.rankings().iter().all(|r| r == &[0, 2, 1]));
    }

    #[test]
    fn soi_ballot_keeps_length() {
        let p = parse("# DATA TYPE: soi\n# NUMBER ALTERNATIVES: 10\n1: 4,2,9\n").unwrap();
        assert_eq!(p.ranking(0), &[3, 1, 8]);
        assert_eq!(p.pos(0, 0), 10);
    }

    #[test]
    fn names_are_attached() {
        let text = "# NUMBER ALTERNATIVES: 2\n# ALTERNATIVE NAME 1: Ann\n# ALTERNATIVE NAME 2: Bo\n1: 2,1\n";
        let p = parse(text).unwrap();
        assert_eq!(p.names().unwrap(), ["Ann", "Bo"]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let base = "# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 3\n";
        assert_eq!(line_of(parse(&format!("{base}1: 1,2,2\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse(&format!("{base}2: 1,2\n")).unwrap_err()), 3);
        assert_eq!(
            line_of(parse(&format!("{base}1: 1,2,3\n1: 1,4,2\n")).unwrap_err()),
            4
        );
        assert_eq!(line_of(parse(&format!("{base}x: 1,2,3\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse(&format!("{base}1 1,2,3\n")).unwrap_err()), 3);
        assert_eq!(
            line_of(parse("1: 1,2\n# NUMBER ALTERNATIVES: 2\n").unwrap_err()),
            1
        );
        assert_eq!(
            line_of(parse("# NUMBER ALTERNATIVES: 3\n1: {1,2},3\n").unwrap_err()),
            2
        );
        let bad_total = "# NUMBER ALTERNATIVES: 2\n# NUMBER VOTERS: 4\n1: 1,2\n";
        assert_eq!(line_of(parse(bad_total).unwrap_err()), 2);
        assert!(parse("").is_err());
        assert!(parse("# NUMBER ALTERNATIVES: 2\n").is_err());
    }

    #[test]
    fn legacy_layout() {
        let text = "3\n1,a\n2,b\n3,c\n5,5,2\n3,1,2,3\n2,3,2,1\n";
        let p = parse(text).unwrap();
        assert_eq!(p.num_voters(), 5);
        assert_eq!(p.ranking(4), &[2, 1, 0]);
        assert_eq!(p.names().unwrap(), ["a", "b", "c"]);
    }

    #[test]
    fn write_groups_and_round_trips() {
        let p =
            PreferenceProfile::new(3, vec![vec![1, 0, 2], vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let mut buf = Vec::new();
        write_profile(&p, &mut buf, None).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("# DATA TYPE: soc"));
        assert!(text.contains("\n2: 1,2,3\n1: 2,1,3\n"));
        let back = read_profile(buf.as_slice()).unwrap();
        let mut again = Vec::new();
        write_profile(&back, &mut again, None).unwrap();
        assert_eq!(buf, again);
    }
}

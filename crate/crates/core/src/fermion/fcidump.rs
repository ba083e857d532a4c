use std::collections::HashMap;
use std::path::Path;

use nalgebra::DMatrix;

use super::MolecularIntegrals;
use crate::error::{Error, Result};

pub fn load_fcidump(path: impl AsRef<Path>) -> Result<MolecularIntegrals> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_fcidump(&text)
}

/// Parses FCIDUMP text: a `&FCI ... &END` (or `/`) namelist header followed
/// by `value i j k l` lines with 1-based orbital indices.
pub fn parse_fcidump(text: &str) -> Result<MolecularIntegrals> {
    let lines: Vec<&str> = text.lines().collect();
    let (header, body_start) = split_header(&lines)?;
    let fields = parse_namelist(&header);
    let get = |key: &str| -> Result<Option<i64>> {
        match fields.get(key).and_then(|v| v.first()) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<i64>()
                .map(Some)
                .map_err(|_| Error::Header(format!("{key} has non-integer value {raw:?}"))),
        }
    };
    let norb = get("NORB")?.ok_or_else(|| Error::Header("missing NORB".into()))?;
    let nelec = get("NELEC")?.ok_or_else(|| Error::Header("missing NELEC".into()))?;
    let ms2 = get("MS2")?.unwrap_or(0);
    if norb <= 0 || nelec < 0 {
        return Err(Error::Header(format!("NORB={norb}, NELEC={nelec} is not a valid system")));
    }
    let n = norb as usize;
    let mut ints = MolecularIntegrals::new(
        n,
        nelec as usize,
        ms2,
        0.0,
        DMatrix::zeros(n, n),
        vec![0.0; n.pow(4)],
    )
    .map_err(|e| Error::Header(e.to_string()))?;

    for (offset, raw) in lines[body_start..].iter().enumerate() {
        let line = body_start + offset + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 5 {
            return Err(Error::Parse { line, message: format!("expected 5 fields, found {}", tokens.len()) });
        }
        let value = parse_real(tokens[0])
            .ok_or_else(|| Error::Parse { line, message: format!("bad value {:?}", tokens[0]) })?;
        let mut idx = [0usize; 4];
        for (slot, tok) in idx.iter_mut().zip(&tokens[1..]) {
            let i: i64 = tok
                .parse()
                .map_err(|_| Error::Parse { line, message: format!("bad index {tok:?}") })?;
            if i < 0 || i > norb {
                return Err(Error::Index { line, index: i, norb: n });
            }
            *slot = i as usize;
        }
        match idx {
            [0, 0, 0, 0] => ints.core_energy = value,
            [i, j, 0, 0] if i > 0 && j > 0 => {
                ints.h[(i - 1, j - 1)] = value;
                ints.h[(j - 1, i - 1)] = value;
            }
            // Orbital energies; not needed for the Hamiltonian.
            [i, 0, 0, 0] if i > 0 => {}
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => ints.set_chem(i - 1, j - 1, k - 1, l - 1, value),
            _ => {
                return Err(Error::Parse { line, message: format!("unrecognized index pattern {idx:?}") });
            }
        }
    }
    Ok(ints)
}

fn split_header(lines: &[&str]) -> Result<(String, usize)> {
    let start = lines
        .iter()
        .position(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Header("empty input".into()))?;
    let first = lines[start].trim_start();
    if !first.to_ascii_uppercase().starts_with("&FCI") {
        return Err(Error::Header("input does not start with &FCI".into()));
    }
    let mut header = String::new();
    for (i, line) in lines.iter().enumerate().skip(start) {
        let mut content = if i == start { &first[4..] } else { line };
        let upper = content.to_ascii_uppercase();
        let end = upper.find("&END").or_else(|| upper.find('/'));
        if let Some(pos) = end {
            content = &content[..pos];
            header.push_str(content);
            return Ok((header, i + 1));
        }
        header.push_str(content);
        header.push(',');
    }
    Err(Error::Header("header is not terminated by &END or /".into()))
}

fn parse_namelist(header: &str) -> HashMap<String, Vec<String>> {
    let mut fields: HashMap<String, Vec<String>> = HashMap::new();
    let mut current: Option<String> = None;
    for token in header.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (key, value) = match token.split_once('=') {
            Some((k, v)) => (Some(k.trim().to_ascii_uppercase()), v),
            None => (None, token),
        };
        if let Some(k) = key {
            fields.entry(k.clone()).or_default();
            current = Some(k);
        }
        if let (Some(k), false) = (&current, value.is_empty()) {
            fields.get_mut(k).expect("key inserted above").push(value.to_string());
        }
    }
    fields
}

fn parse_real(token: &str) -> Option<f64> {
    token.replace(['D', 'd'], "E").parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_values_are_echoed() {
        let ints = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n").unwrap();
        assert_eq!((ints.n_orb, ints.n_elec, ints.ms2), (2, 2, 0));
    }

    #[test]
    fn multiline_header_and_slash_terminator() {
        let text = " &fci norb=   3,nelec= 4,ms2=0,\n  orbsym=1,1,\n 1,\n  isym=1\n /\n 1.5 1 1 0 0\n";
        let ints = parse_fcidump(text).unwrap();
        assert_eq!(ints.n_orb, 3);
        assert_eq!(ints.n_elec, 4);
        assert_eq!(ints.h[(0, 0)], 1.5);
    }

    #[test]
    fn body_conventions() {
        let text = "&FCI NORB=2,NELEC=2,MS2=0 &END\n0.75 1 1 1 1\n0.715 0 0 0 0\n0.2 2 1 2 1\n-1.25D0 1 2 0 0\n-0.3 1 0 0 0\n";
        let ints = parse_fcidump(text).unwrap();
        assert_eq!(ints.g(0, 0, 0, 0), 0.75);
        assert_eq!(ints.chem(0, 0, 0, 0), 0.75);
        assert_eq!(ints.core_energy, 0.715);
        assert_eq!(ints.chem(0, 1, 0, 1), 0.2);
        assert_eq!(ints.g(0, 0, 1, 1), 0.2);
        assert_eq!(ints.g(1, 0, 0, 1), 0.2);
        assert_eq!(ints.h[(0, 1)], -1.25);
        assert_eq!(ints.h[(1, 0)], -1.25);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let header = "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n";
        match parse_fcidump(&format!("{header}0.5 1 1\n")) {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_fcidump(&format!("{header}0.5 1 1 0 0\nabc 1 1 1 1\n")) {
            Err(Error::Parse { line: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_fcidump(&format!("{header}0.5 3 1 0 0\n")) {
            Err(Error::Index { line: 3, index: 3, norb: 2 }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_fcidump(&format!("{header}0.5 1 0 1 0\n")), Err(Error::Parse { .. })));
    }

    #[test]
    fn header_errors() {
        assert!(matches!(parse_fcidump("&FCI NELEC=2 &END\n"), Err(Error::Header(_))));
        assert!(matches!(parse_fcidump("&FCI NORB=2 &END\n"), Err(Error::Header(_))));
        assert!(matches!(parse_fcidump("NORB=2\n"), Err(Error::Header(_))));
        assert!(matches!(parse_fcidump("&FCI NORB=2, NELEC=2\n 0.1 1 1 0 0\n"), Err(Error::Header(_))));
    }
}

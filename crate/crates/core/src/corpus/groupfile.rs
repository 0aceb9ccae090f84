//! Text group files.
//!
//! ```text
//! group/v1 <n>
//! labels <l_0> ... <l_{n-1}>        (optional, whitespace-free labels)
//! gens <degree>                     followed by one cycle-notation line per generator
//! table                             or n rows of n space-separated indices
//! sha256 <hex>                      (optional) digest of every preceding byte
//! ```
//!
//! Groups up to [`TABLE_WRITE_LIMIT`] are written as tables; larger ones as
//! generators of the right regular representation. Reading a `gens` file
//! numbers elements by breadth-first closure, so such files reach a fixed
//! point after one write/read cycle.

use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{GroupError, Result};
use crate::group::{format_cycles, parse_cycles, FiniteGroup, Permutation};

pub const TABLE_WRITE_LIMIT: usize = 512;

pub fn format_group(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = format!("group/v1 {n}\n");
    if let Some(labels) = g.labels() {
        out.push_str("labels");
        for l in labels {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
    }
    if n <= TABLE_WRITE_LIMIT {
        out.push_str("table\n");
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    } else {
        out.push_str(&format!("gens {n}\n"));
        for s in g.generators() {
            let perm = Permutation((0..n).map(|x| g.mul(x, s) as u32).collect());
            out.push_str(&format_cycles(&perm));
            out.push('\n');
        }
    }
    let digest = hex::encode(Sha256::digest(out.as_bytes()));
    out.push_str(&format!("sha256 {digest}\n"));
    out
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let perr = |m: String| GroupError::Parse(m);
    // verify the digest over the bytes preceding the sha256 line
    let mut body = text;
    if let Some(pos) = text.rfind("sha256 ") {
        if pos == 0 || text.as_bytes()[pos - 1] == b'\n' {
            let claimed = text[pos + 7..].trim();
            let actual = hex::encode(Sha256::digest(text[..pos].as_bytes()));
            if claimed != actual {
                return Err(perr(format!("content hash mismatch: file says {claimed}, content is {actual}")));
            }
            body = &text[..pos];
        }
    }
    let mut lines = body.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| perr("empty group file".into()))?;
    let n: usize = header
        .strip_prefix("group/v1 ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| perr(format!("bad header {header:?}")))?;
    let mut labels: Option<Vec<String>> = None;
    let mut line = lines.next().ok_or_else(|| perr("missing body".into()))?;
    if let Some(rest) = line.strip_prefix("labels") {
        labels = Some(rest.split_whitespace().map(String::from).collect());
        line = lines.next().ok_or_else(|| perr("missing body".into()))?;
    }
    let g = if line.trim() == "table" {
        let mut table = Vec::with_capacity(n * n);
        for r in 0..n {
            let row = lines.next().ok_or_else(|| perr(format!("missing table row {r}")))?;
            let vals: Vec<u32> = row
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| perr(format!("bad entry {t:?} in row {r}"))))
                .collect::<Result<_>>()?;
            if vals.len() != n {
                return Err(perr(format!("row {r} has {} entries, expected {n}", vals.len())));
            }
            table.extend(vals);
        }
        FiniteGroup::from_table(n, table, "group file")?
    } else if let Some(d) = line.strip_prefix("gens ") {
        let degree: usize = d.trim().parse().map_err(|_| perr(format!("bad degree {d:?}")))?;
        let perms = lines
            .by_ref()
            .map(|l| parse_cycles(l, degree))
            .collect::<Result<Vec<_>>>()?;
        let g = FiniteGroup::from_permutation_generators(&perms, degree)?;
        if g.order() != n {
            return Err(perr(format!("generators give order {}, header says {n}", g.order())));
        }
        g
    } else {
        return Err(perr(format!("expected 'table' or 'gens', got {line:?}")));
    };
    if lines.next().is_some() {
        return Err(perr("unexpected trailing lines".into()));
    }
    match labels {
        Some(l) => g.with_labels(l),
        None => Ok(g),
    }
}

pub fn read_group_file(path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)?;
    parse_group(&text)
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| GroupError::Io(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_group_file(path: &Path, g: &FiniteGroup) -> Result<()> {
    write_atomic(path, &format_group(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn table_round_trip() {
        let g = corpus::symmetric(4).unwrap();
        let text = format_group(&g);
        let h = parse_group(&text).unwrap();
        assert_eq!(format_group(&h), text);
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(g.mul(a, b), h.mul(a, b));
            }
        }
    }

    #[test]
    fn gens_form_reaches_fixed_point() {
        let g = corpus::alternating(6).unwrap();
        let g = FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(2).unwrap()).unwrap();
        let t1 = format_group(&g);
        assert!(t1.contains("\ngens 720\n"));
        let h = parse_group(&t1).unwrap();
        assert_eq!(h.order(), 720);
        let t2 = format_group(&h);
        let k = parse_group(&t2).unwrap();
        assert_eq!(format_group(&k), t2);
    }

    #[test]
    fn tampering_detected() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let text = format_group(&g).replace("0 1 2\n1 2 0", "0 1 2\n1 2 1");
        assert!(matches!(parse_group(&text), Err(GroupError::Parse(_))));
        assert!(parse_group("group/v1 2\ntable\n0 1\n1 1\n").is_err());
        assert!(parse_group("group/v2 2\n").is_err());
    }

    #[test]
    fn gens_file_by_hand() {
        let text = "group/v1 6\ngens 3\n(0 1)\n(0 1 2)\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.order(), 6);
        assert!(parse_group("group/v1 5\ngens 3\n(0 1)\n(0 1 2)\n").is_err());
        assert!(parse_group("group/v1 2\ngens 3\n(0 0)\n").is_err());
    }
}

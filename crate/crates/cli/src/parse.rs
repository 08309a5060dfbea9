//! Flag value parsers; clap reports their errors against the offending flag.

use std::ops::RangeInclusive;

/// `"2x2,2x3"`, with `"1x1*7"` or `"1x1×7"` for seven copies.
pub fn blocks(s: &str) -> Result<Vec<(u32, u32)>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if item.is_empty() {
            return Err("empty block in list".into());
        }
        let (shape, copies) = match item.split_once(['*', '×']) {
            Some((shape, copies)) => {
                let c: usize = copies
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad repetition count in '{item}'"))?;
                if c == 0 {
                    return Err(format!("repetition count must be positive in '{item}'"));
                }
                (shape.trim(), c)
            }
            None => (item, 1),
        };
        let (n, m) = shape
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected NxM, got '{shape}'"))?;
        let dim = |v: &str| -> Result<u32, String> {
            match v.trim().parse::<u32>() {
                Ok(0) | Err(_) => Err(format!("bad dimension '{v}' in '{shape}'")),
                Ok(x) => Ok(x),
            }
        };
        let block = (dim(n)?, dim(m)?);
        out.extend(std::iter::repeat_n(block, copies));
    }
    Ok(out)
}

/// `"3..10"` or `"3..=10"` (both inclusive), or a single value.
pub fn range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |v: &str| v.trim().parse::<u32>().map_err(|_| format!("bad bound '{v}'"));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

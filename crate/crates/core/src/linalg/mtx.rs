//! MatrixMarket coordinate export for matrices over GF(p).

use std::io::{self, BufRead, Write};

use crate::arith::PrimeField;
use crate::error::{Error, Result};
use crate::FpMatrix;

pub const MM_HEADER: &str = "%%MatrixMarket matrix coordinate integer general";

/// Writes the header, a size line, then one `row col value` line per nonzero
/// (1-based, canonical residues).
pub fn write_matrix_market<W: Write>(m: &FpMatrix, mut out: W) -> io::Result<()> {
    let trips = m.triplets();
    writeln!(out, "{MM_HEADER}")?;
    writeln!(out, "% prime {}", m.field().modulus())?;
    writeln!(out, "{} {} {}", m.rows(), m.cols(), trips.len())?;
    for (r, c, v) in trips {
        writeln!(out, "{} {} {}", r + 1, c + 1, v.value())?;
    }
    Ok(())
}

/// Reads a file written by [`write_matrix_market`].
pub fn read_matrix_market<R: BufRead>(field: PrimeField, input: R) -> Result<FpMatrix> {
    let bad = |msg: &str| Error::Io(format!("malformed MatrixMarket: {msg}"));
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| bad("empty"))??;
    if header.trim() != MM_HEADER {
        return Err(bad("header"));
    }
    let mut size = None;
    let mut trips = Vec::new();
    for line in lines {
        let line = line?;
        if line.starts_with('%') || line.trim().is_empty() {
            continue;
        }
        let nums: Vec<i64> = line
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| bad("number")))
            .collect::<Result<_>>()?;
        if nums.len() != 3 {
            return Err(bad("line arity"));
        }
        match size {
            None => size = Some((nums[0] as usize, nums[1] as usize)),
            Some(_) => trips.push((nums[0] as usize - 1, nums[1] as usize - 1, field.elem(nums[2]))),
        }
    }
    let (rows, cols) = size.ok_or_else(|| bad("size line"))?;
    Ok(FpMatrix::from_triplets(field, rows, cols, trips))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_exact_format() {
        let f = PrimeField::new(7).unwrap();
        let m = FpMatrix::from_triplets(f, 2, 3, vec![(0, 2, f.elem(-1)), (1, 0, f.elem(3))]);
        let mut buf = Vec::new();
        write_matrix_market(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "%%MatrixMarket matrix coordinate integer general\n% prime 7\n2 3 2\n1 3 6\n2 1 3\n"
        );
        assert_eq!(read_matrix_market(f, text.as_bytes()).unwrap(), m);
    }
}

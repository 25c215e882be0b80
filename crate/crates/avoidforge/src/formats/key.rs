//! `toeplitz N=<N> m=<m> diag=<hex>`.

use avoidforge_core::extract::ExtractorKey;
use avoidforge_core::Bits;

use super::{content_lines, kv, num, FormatError};

pub fn parse_key(text: &str) -> Result<ExtractorKey, FormatError> {
    let mut lines = content_lines(text);
    let (ln, line) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(0, "empty key file"))?;
    if let Some((ln, _)) = lines.next() {
        return Err(FormatError::syntax(ln, "trailing content after key"));
    }
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "toeplitz" {
        return Err(FormatError::syntax(
            ln,
            "expected `toeplitz N=<N> m=<m> diag=<hex>`",
        ));
    }
    let n: usize = num(ln, kv(ln, toks[1], "N")?)?;
    let m: usize = num(ln, kv(ln, toks[2], "m")?)?;
    let len = (n + m).saturating_sub(1);
    let diag =
        Bits::from_hex(kv(ln, toks[3], "diag")?, len).map_err(|e| FormatError::invalid(ln, e))?;
    ExtractorKey::new(n, m, diag).map_err(|e| FormatError::invalid(ln, e))
}

pub fn emit_key(k: &ExtractorKey) -> String {
    format!(
        "toeplitz N={} m={} diag={}\n",
        k.input_len(),
        k.output_len(),
        k.diag().to_hex()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use avoidforge_core::extract::sample_key;

    #[test]
    fn roundtrip() {
        for (n, m) in [(1, 1), (6, 3), (18, 5)] {
            let k = sample_key(n, m, 4).unwrap();
            assert_eq!(parse_key(&emit_key(&k)).unwrap(), k);
        }
        assert!(parse_key("toeplitz N=2 m=1 diag=zz\n").is_err());
    }
}

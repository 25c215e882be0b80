//! One hex-encoded bit string per line (shift lists, `y` samples).

use avoidforge_core::Bits;

use super::{content_lines, FormatError};

pub fn parse_hex_lines(text: &str, len: usize) -> Result<Vec<Bits>, FormatError> {
    content_lines(text)
        .map(|(ln, l)| Bits::from_hex(l, len).map_err(|e| FormatError::invalid(ln, e)))
        .collect()
}

pub fn emit_hex_lines(v: &[Bits]) -> String {
    v.iter().map(|b| format!("{}\n", b.to_hex())).collect()
}

/// A bit string given either as `0`/`1` characters or as `hex:<digits>`.
pub fn parse_bits_arg(s: &str, len: usize) -> Result<Bits, FormatError> {
    let b = match s.strip_prefix("hex:") {
        Some(h) => Bits::from_hex(h, len),
        None => Bits::from_bit_str(s),
    }
    .map_err(|e| FormatError::invalid(0, e))?;
    if b.len() != len {
        return Err(FormatError::invalid(
            0,
            format!("expected {len} bits, got {}", b.len()),
        ));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let v = vec![Bits::from_bit_str("10110").unwrap(), Bits::zeros(5)];
        assert_eq!(parse_hex_lines(&emit_hex_lines(&v), 5).unwrap(), v);
        assert_eq!(
            parse_bits_arg("101", 3).unwrap(),
            Bits::from_bit_str("101").unwrap()
        );
        assert!(parse_bits_arg("101", 4).is_err());
    }
}

use alloc::vec::Vec;

use crate::bits::Bits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TtOp {
    And,
    Or,
    Xor,
    Not,
}

impl TtOp {
    /// `00` AND, `01` OR, `10` XOR, `11` NOT.
    pub fn from_code(code: u8) -> TtOp {
        match code & 3 {
            0 => TtOp::And,
            1 => TtOp::Or,
            2 => TtOp::Xor,
            _ => TtOp::Not,
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

/// Operand index width `ceil(log2(s + n))`.
pub fn tt_index_width(n: usize, s: usize) -> usize {
    let k = n + s;
    if k <= 1 {
        0
    } else {
        (usize::BITS - (k - 1).leading_zeros()) as usize
    }
}

/// Description length `s * (2 + 2 * ceil(log2(s + n)))`.
pub fn tt_desc_len(n: usize, s: usize) -> usize {
    s * (2 + 2 * tt_index_width(n, s))
}

fn read_field(desc: &Bits, pos: &mut usize, width: usize) -> usize {
    let mut v = 0usize;
    for _ in 0..width {
        v = (v << 1) | desc.get(*pos) as usize;
        *pos += 1;
    }
    v
}

/// Truth table of the circuit described by `desc`, indexed by the lex index of the input.
///
/// `desc` holds `s` gates of (2-bit op, operand a, operand b), all fields MSB-first.
/// Gate `g` reads operand index `i mod (n + g)` from the inputs followed by earlier gates;
/// NOT uses operand a. The last gate is the output. With no inputs and no earlier gates an
/// operand reads the constant 0. Panics if `desc` has the wrong length or `s == 0`.
pub fn tt_evaluate(n: usize, s: usize, desc: &Bits) -> Bits {
    assert!(s >= 1, "truth-table generator needs at least one gate");
    assert_eq!(desc.len(), tt_desc_len(n, s), "description length");
    let w = tt_index_width(n, s);
    let mut pos = 0;
    let mut gates: Vec<(TtOp, usize, usize)> = Vec::with_capacity(s);
    for _ in 0..s {
        let op = TtOp::from_code(read_field(desc, &mut pos, 2) as u8);
        let a = read_field(desc, &mut pos, w);
        let b = read_field(desc, &mut pos, w);
        gates.push((op, a, b));
    }
    let rows = 1u64 << n;
    let mut table = Bits::zeros(rows as usize);
    let mut vals: Vec<bool> = Vec::with_capacity(n + s);
    for idx in 0..rows {
        vals.clear();
        vals.extend((0..n).map(|i| (idx >> (n - 1 - i)) & 1 == 1));
        for (g, &(op, a, b)) in gates.iter().enumerate() {
            let avail = n + g;
            let read = |i: usize| if avail == 0 { false } else { vals[i % avail] };
            let (x, y) = (read(a), read(b));
            let v = match op {
                TtOp::And => x & y,
                TtOp::Or => x | y,
                TtOp::Xor => x ^ y,
                TtOp::Not => !x,
            };
            vals.push(v);
        }
        table.set(idx as usize, vals[n + s - 1]);
    }
    table
}

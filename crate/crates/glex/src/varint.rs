//! LEB128 unsigned varints, shared by the trie stream and the GLEX
//! container.

use std::io::{self, Read, Write};

pub(crate) fn write(sink: &mut impl Write, mut value: u64) -> io::Result<()> {
    loop {
        let byte = (value & 0x7f) as u8;
        value >>= 7;
        if value == 0 {
            return sink.write_all(&[byte]);
        }
        sink.write_all(&[byte | 0x80])?;
    }
}

pub(crate) fn read(source: &mut impl Read) -> io::Result<u64> {
    let mut value = 0u64;
    let mut shift = 0u32;
    loop {
        let mut byte = [0u8];
        source.read_exact(&mut byte)?;
        if shift >= 63 && byte[0] > 1 {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "varint overflow"));
        }
        value |= u64::from(byte[0] & 0x7f) << shift;
        if byte[0] & 0x80 == 0 {
            return Ok(value);
        }
        shift += 7;
    }
}

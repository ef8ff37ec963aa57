//! Binary checkpoints of a Q-network and its Adam state.
//!
//! Layout (little-endian): `IABQ`, u16 version, u32 layer count, u32 dims
//! (layer count + 1 of them). Body: weights then biases for each layer,
//! then the first and second Adam moments in the same order, all f64, then
//! the Adam step count (u64) and beta1, beta2, eps_hat (f64). A CRC-32 of
//! the body bytes closes the file.

use std::fs;
use std::path::Path;

use super::adam::AdamState;
use super::mlp::{Dense, QNetwork};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"IABQ";
pub const VERSION: u16 = 1;
const MAX_LAYERS: usize = 64;
const MAX_DIM: usize = 1 << 20;

fn put_blocks(out: &mut Vec<u8>, blocks: &[Dense]) {
    for b in blocks {
        for v in b.params() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
}

pub fn to_bytes(net: &QNetwork, adam: &AdamState) -> Result<Vec<u8>> {
    if !adam.matches(net) {
        return Err(Error::Shape {
            context: "checkpoint adam state",
            expected: net.layers().len(),
            actual: adam.first_moment.len(),
        });
    }
    let dims = net.layer_dims();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&((dims.len() - 1) as u32).to_le_bytes());
    for &d in dims {
        out.extend_from_slice(&(d as u32).to_le_bytes());
    }
    let body_start = out.len();
    put_blocks(&mut out, net.layers());
    put_blocks(&mut out, &adam.first_moment);
    put_blocks(&mut out, &adam.second_moment);
    out.extend_from_slice(&adam.step_count.to_le_bytes());
    for v in [adam.beta1, adam.beta2, adam.eps_hat] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    let crc = crc32fast::hash(&out[body_start..]);
    out.extend_from_slice(&crc.to_le_bytes());
    Ok(out)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Format("checkpoint truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn blocks(&mut self, dims: &[usize]) -> Result<Vec<Dense>> {
        dims.windows(2)
            .map(|w| {
                let mut d = Dense::zeros(w[0], w[1]);
                for p in d.params_mut() {
                    *p = self.f64()?;
                }
                Ok(d)
            })
            .collect()
    }
}

pub fn from_bytes(bytes: &[u8]) -> Result<(QNetwork, AdamState)> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::Format("bad checkpoint magic".into()));
    }
    let version = r.u16()?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion {
            found: version,
            supported: VERSION,
        });
    }
    let layers = r.u32()? as usize;
    if layers == 0 || layers > MAX_LAYERS {
        return Err(Error::Format(format!("implausible layer count {layers}")));
    }
    let dims = (0..=layers)
        .map(|_| r.u32().map(|d| d as usize))
        .collect::<Result<Vec<_>>>()?;
    if dims.iter().any(|&d| d == 0 || d > MAX_DIM) {
        return Err(Error::Format(format!("implausible layer dims {dims:?}")));
    }
    let params: usize = dims.windows(2).map(|w| w[0] * w[1] + w[1]).sum();
    let body_len = params * 8 * 3 + 8 + 3 * 8;
    let body_start = r.pos;
    if bytes.len() != body_start + body_len + 4 {
        return Err(Error::Format(format!(
            "checkpoint is {} bytes, header declares {}",
            bytes.len(),
            body_start + body_len + 4
        )));
    }
    let body = &bytes[body_start..body_start + body_len];
    let stored = u32::from_le_bytes(bytes[body_start + body_len..].try_into().unwrap());
    if crc32fast::hash(body) != stored {
        return Err(Error::Format("checkpoint checksum mismatch".into()));
    }

    let net = QNetwork::from_layers(r.blocks(&dims)?)?;
    let first_moment = r.blocks(&dims)?;
    let second_moment = r.blocks(&dims)?;
    let adam = AdamState {
        first_moment,
        second_moment,
        step_count: r.u64()?,
        beta1: r.f64()?,
        beta2: r.f64()?,
        eps_hat: r.f64()?,
    };
    if !net.is_finite() || !adam.is_finite() {
        return Err(Error::Format("checkpoint holds non-finite values".into()));
    }
    Ok((net, adam))
}

pub fn checkpoint_save(net: &QNetwork, adam: &AdamState, path: &Path) -> Result<()> {
    fs::write(path, to_bytes(net, adam)?)?;
    Ok(())
}

pub fn checkpoint_load(path: &Path) -> Result<(QNetwork, AdamState)> {
    let bytes = fs::read(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingModel(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    from_bytes(&bytes)
}

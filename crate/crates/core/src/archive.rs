//! Archive container and the encode/decode pipeline.
//!
//! Byte layout, integers big-endian:
//!
//! ```text
//! "SLIM" | version (1) | n (8) | payload bit length (8) | payload, zero-padded to a byte
//!        | sidecar count (8) | count × L_G label (4)
//! ```
//!
//! The payload is the prefixed concatenation of the code-book `χ`,
//! `code(G)` and one part per query section; a section part is its 32-bit
//! ASCII tag followed by its body. The sidecar maps each input vertex to its
//! label and is not counted in the payload.

use std::fmt;

use crate::bits::{BitSlice, BitString};
use crate::codec::{self, leaf_threshold, Codebook, Encoding, TreeParams};
use crate::concat::{concat, ConcatView};
use crate::error::FormatError;
use crate::graph::{Graph, Vertex};
use crate::{label, query};

pub const MAGIC: [u8; 4] = *b"SLIM";
pub const VERSION: u8 = 1;
const HEADER_BYTES: usize = 4 + 1 + 8 + 8;

/// A query section kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Section {
    Lbl,
    Deg,
    Adj,
    /// Bounded-distance paths up to the given `t`.
    Near(u32),
}

impl Section {
    /// The 4-character tag, space padded.
    pub fn tag(&self) -> [u8; 4] {
        let s = match self {
            Section::Lbl => "LBL".to_string(),
            Section::Deg => "DEG".to_string(),
            Section::Adj => "ADJ".to_string(),
            Section::Near(t) => format!("NR{t}"),
        };
        let mut out = *b"    ";
        out[..s.len()].copy_from_slice(s.as_bytes());
        out
    }

    pub fn from_tag(tag: &[u8; 4]) -> Option<Section> {
        let s = std::str::from_utf8(tag).ok()?.trim_end();
        match s {
            "LBL" => Some(Section::Lbl),
            "DEG" => Some(Section::Deg),
            "ADJ" => Some(Section::Adj),
            _ => s.strip_prefix("NR").and_then(|t| t.parse().ok()).filter(|&t| (1..=99).contains(&t)).map(Section::Near),
        }
    }

    /// Parses a comma-separated list such as `deg,adj,nr3`.
    pub fn parse_list(s: &str) -> Result<Vec<Section>, String> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let sec = match item.to_ascii_lowercase().as_str() {
                "lbl" => Section::Lbl,
                "deg" => Section::Deg,
                "adj" => Section::Adj,
                "none" => continue,
                other => match other.strip_prefix("nr").and_then(|t| t.parse::<u32>().ok()) {
                    Some(t) if (1..=99).contains(&t) => Section::Near(t),
                    _ => return Err(format!("unknown section '{item}'")),
                },
            };
            if !out.contains(&sec) {
                out.push(sec);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(String::from_utf8_lossy(&self.tag()).trim_end())
    }
}

/// What to build.
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct EncodeOptions {
    /// Query sections; `LBL` is added whenever another section is present.
    pub sections: Vec<Section>,
    pub params: TreeParams,
}


impl EncodeOptions {
    pub fn with_sections(sections: &[Section]) -> Self {
        EncodeOptions { sections: sections.to_vec(), ..Self::default() }
    }

    /// Requested sections in archive order, with `LBL` first when needed.
    pub fn resolved_sections(&self) -> Vec<Section> {
        let mut s: Vec<Section> = self.sections.iter().copied().filter(|&x| x != Section::Lbl).collect();
        s.sort();
        s.dedup();
        if !s.is_empty() || self.sections.contains(&Section::Lbl) {
            s.insert(0, Section::Lbl);
        }
        s
    }
}

/// Bit counts of one encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodeReport {
    pub n: usize,
    pub payload_bits: usize,
    pub chi_bits: usize,
    pub code_bits: usize,
    pub sections: Vec<(Section, usize)>,
}

/// An encoded graph: payload plus sidecar label map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Archive {
    n: usize,
    payload: BitString,
    sidecar: Vec<u32>,
}

/// The top-level parts of an archive payload.
pub struct ArchiveView<'a> {
    pub chi: BitSlice<'a>,
    pub code: BitSlice<'a>,
    pub sections: Vec<(Section, BitSlice<'a>)>,
}

impl<'a> ArchiveView<'a> {
    pub fn section(&self, s: Section) -> Option<BitSlice<'a>> {
        self.sections.iter().find(|x| x.0 == s).map(|x| x.1)
    }
}

impl Archive {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn payload(&self) -> &BitString {
        &self.payload
    }

    /// `L_G` label of each input vertex.
    pub fn sidecar(&self) -> &[u32] {
        &self.sidecar
    }

    pub fn view(&self) -> Result<ArchiveView<'_>, FormatError> {
        let top = ConcatView::parse(self.payload.as_slice())?;
        if top.part_count() < 2 {
            return Err(FormatError::Inconsistent("payload needs a code-book and a code"));
        }
        let mut sections = Vec::new();
        for i in 3..=top.part_count() {
            let part = top.part(i)?;
            if part.len() < 32 {
                return Err(FormatError::Truncated("section tag"));
            }
            let tag = (part.get_bits(0, 32) as u32).to_be_bytes();
            let sec = Section::from_tag(&tag).ok_or(FormatError::Inconsistent("unknown section tag"))?;
            if sections.iter().any(|x: &(Section, BitSlice<'_>)| x.0 == sec) {
                return Err(FormatError::Inconsistent("repeated section"));
            }
            sections.push((sec, part.sub(32, part.len() - 32)));
        }
        Ok(ArchiveView { chi: top.part(1)?, code: top.part(2)?, sections })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_BYTES + self.payload.len() / 8 + 9 + 4 * self.sidecar.len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.n as u64).to_be_bytes());
        out.extend_from_slice(&(self.payload.len() as u64).to_be_bytes());
        out.extend_from_slice(&self.payload.to_bytes());
        out.extend_from_slice(&(self.sidecar.len() as u64).to_be_bytes());
        for &l in &self.sidecar {
            out.extend_from_slice(&l.to_be_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Archive, FormatError> {
        if bytes.len() < 4 || bytes[..4] != MAGIC {
            return Err(FormatError::BadMagic);
        }
        if bytes.len() < 5 {
            return Err(FormatError::Truncated("header"));
        }
        if bytes[4] != VERSION {
            return Err(FormatError::BadVersion(bytes[4]));
        }
        if bytes.len() < HEADER_BYTES {
            return Err(FormatError::Truncated("header"));
        }
        let be = |at: usize| u64::from_be_bytes(bytes[at..at + 8].try_into().expect("eight bytes"));
        let n = be(5);
        let bits = be(13);
        if n > u32::MAX as u64 {
            return Err(FormatError::Inconsistent("vertex count"));
        }
        let payload_bytes = bits.div_ceil(8);
        let rest = (bytes.len() - HEADER_BYTES) as u64;
        if payload_bytes > rest {
            return Err(FormatError::Truncated("payload"));
        }
        let p_end = HEADER_BYTES + payload_bytes as usize;
        let payload = BitString::from_bytes(&bytes[HEADER_BYTES..p_end], bits as usize);
        if payload.to_bytes() != bytes[HEADER_BYTES..p_end] {
            return Err(FormatError::Inconsistent("nonzero padding"));
        }
        if bytes.len() < p_end + 8 {
            return Err(FormatError::Truncated("sidecar length"));
        }
        let count = u64::from_be_bytes(bytes[p_end..p_end + 8].try_into().expect("eight bytes"));
        if count != n {
            return Err(FormatError::Inconsistent("sidecar length"));
        }
        let body = &bytes[p_end + 8..];
        if body.len() as u64 != 4 * count {
            return Err(FormatError::Truncated("sidecar"));
        }
        let sidecar: Vec<u32> = body.chunks_exact(4).map(|c| u32::from_be_bytes(c.try_into().expect("four bytes"))).collect();
        let mut seen = vec![false; n as usize];
        for &l in &sidecar {
            let slot = (l as usize).checked_sub(1).and_then(|i| seen.get_mut(i)).ok_or(FormatError::Inconsistent("sidecar label"))?;
            if std::mem::replace(slot, true) {
                return Err(FormatError::Inconsistent("sidecar label repeated"));
            }
        }
        Ok(Archive { n: n as usize, payload, sidecar })
    }
}

fn tagged(s: Section, body: BitString) -> BitString {
    let mut out = BitString::with_capacity(32 + body.len());
    out.push_bits(u32::from_be_bytes(s.tag()) as u64, 32);
    out.append(&body);
    out
}

/// Builds the body of one section.
pub fn build_section(enc: &Encoding, s: Section) -> BitString {
    match s {
        Section::Lbl => label::build_section(&enc.tree),
        Section::Deg => query::build_degree_section(enc),
        Section::Adj => query::build_adjacency_section(enc),
        Section::Near(t) => query::build_near_section(enc, t),
    }
}

/// Encodes `g` with the requested sections.
pub fn encode(g: &Graph, opts: &EncodeOptions) -> (Archive, EncodeReport) {
    let enc = codec::encode_base_with(g, opts.params);
    encode_from(&enc, g.n(), opts)
}

/// Assembles an archive from an existing base encoding.
pub fn encode_from(enc: &Encoding, n: usize, opts: &EncodeOptions) -> (Archive, EncodeReport) {
    let chi = enc.codebook.to_bits();
    let mut parts = vec![chi.clone(), enc.code.clone()];
    let mut sizes = Vec::new();
    for s in opts.resolved_sections() {
        let body = build_section(enc, s);
        sizes.push((s, 32 + body.len()));
        parts.push(tagged(s, body));
    }
    let payload = concat(&parts);
    let report = EncodeReport { n, payload_bits: payload.len(), chi_bits: chi.len(), code_bits: enc.code.len(), sections: sizes };
    (Archive { n, payload, sidecar: enc.root_labels().to_vec() }, report)
}

/// Adds a section to an archive; existing parts keep their bits.
pub fn append_section(archive: &Archive, enc: &Encoding, s: Section) -> Result<Archive, FormatError> {
    let top = ConcatView::parse(archive.payload.as_slice())?;
    let mut parts: Vec<BitString> = top.parts()?.iter().map(BitSlice::to_bitstring).collect();
    if archive.view()?.section(s).is_some() {
        return Err(FormatError::Inconsistent("section already present"));
    }
    parts.push(tagged(s, build_section(enc, s)));
    Ok(Archive { n: archive.n, payload: concat(&parts), sidecar: archive.sidecar.clone() })
}

/// Reads the code-book of an archive and checks it against `n`.
pub fn read_codebook(view: &ArchiveView<'_>, n: usize) -> Result<Codebook, FormatError> {
    let cb = Codebook::from_bits(view.chi)?;
    if cb.ell != leaf_threshold(n) {
        return Err(FormatError::Inconsistent("leaf threshold disagrees with n"));
    }
    Ok(cb)
}

/// Decodes an archive back to the input graph, in input ids.
pub fn decode(archive: &Archive) -> Result<Graph, FormatError> {
    let view = archive.view()?;
    let cb = read_codebook(&view, archive.n)?;
    let on_labels = codec::decode_code(view.code, &cb, archive.n)?;
    let mut id_of = vec![0 as Vertex; archive.n];
    for (v, &l) in archive.sidecar.iter().enumerate() {
        id_of[l as usize - 1] = v as Vertex;
    }
    Ok(on_labels.permute(&id_of))
}

/// Decodes an archive and checks that encoding the result with the same
/// sections reproduces it bit for bit.
pub fn verify(archive: &Archive) -> Result<Graph, FormatError> {
    let g = decode(archive)?;
    let sections: Vec<Section> = archive.view()?.sections.iter().map(|s| s.0).collect();
    let (again, _) = encode(&g, &EncodeOptions::with_sections(&sections));
    if &again != archive {
        return Err(FormatError::NotCanonical);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn tags_round_trip() {
        for s in [Section::Lbl, Section::Deg, Section::Adj, Section::Near(3), Section::Near(12)] {
            assert_eq!(Section::from_tag(&s.tag()), Some(s));
        }
        assert_eq!(&Section::Near(3).tag(), b"NR3 ");
        assert_eq!(Section::parse_list("deg, adj,nr3").unwrap(), vec![Section::Deg, Section::Adj, Section::Near(3)]);
        assert!(Section::parse_list("deg,foo").is_err());
    }

    #[test]
    fn round_trip_through_bytes() {
        let g = corpus::maximal_planar(300, 4).with_colors(Some(corpus::random_colors(300, 3, 1)));
        let (a, report) = encode(&g, &EncodeOptions::with_sections(&[Section::Deg, Section::Adj, Section::Near(2)]));
        let back = Archive::from_bytes(&a.to_bytes()).unwrap();
        assert_eq!(back, a);
        assert_eq!(decode(&back).unwrap(), g);
        let tags: Vec<Section> = back.view().unwrap().sections.iter().map(|s| s.0).collect();
        assert_eq!(tags, vec![Section::Lbl, Section::Deg, Section::Adj, Section::Near(2)]);
        assert_eq!(report.payload_bits, a.payload().len());
    }

    #[test]
    fn tiny_and_empty_graphs() {
        for g in [Graph::empty(0), Graph::empty(1), corpus::random_tree(2, 0), corpus::random_tree(5, 0)] {
            let (a, _) = encode(&g, &EncodeOptions::with_sections(&[Section::Deg]));
            assert_eq!(decode(&Archive::from_bytes(&a.to_bytes()).unwrap()).unwrap(), g);
        }
    }

    #[test]
    fn header_errors_are_distinct() {
        let (a, _) = encode(&corpus::random_tree(50, 1), &EncodeOptions::default());
        let bytes = a.to_bytes();
        let mut bad = bytes.clone();
        bad[0] ^= 1;
        assert_eq!(Archive::from_bytes(&bad), Err(FormatError::BadMagic));
        let mut bad = bytes.clone();
        bad[4] = 9;
        assert_eq!(Archive::from_bytes(&bad), Err(FormatError::BadVersion(9)));
        assert!(matches!(Archive::from_bytes(&bytes[..bytes.len() - 3]), Err(FormatError::Truncated(_))));
    }

    #[test]
    fn verification_rejects_edits_to_unused_sections() {
        let g = corpus::grid(9, 9);
        let (a, _) = encode(&g, &EncodeOptions::with_sections(&[Section::Deg]));
        assert_eq!(verify(&a).unwrap(), g);
        let mut bytes = a.to_bytes();
        // last payload byte belongs to the degree section
        let at = HEADER_BYTES + a.payload().len().div_ceil(8) - 1;
        bytes[at] ^= 0x80 >> ((a.payload().len() - 1) % 8);
        let b = Archive::from_bytes(&bytes).unwrap();
        assert_eq!(decode(&b).unwrap(), g);
        assert_eq!(verify(&b), Err(FormatError::NotCanonical));
    }

    #[test]
    fn appending_keeps_existing_parts() {
        let g = corpus::grid(10, 10);
        let enc = codec::encode_base(&g);
        let (a, _) = encode_from(&enc, g.n(), &EncodeOptions::with_sections(&[Section::Deg]));
        let b = append_section(&a, &enc, Section::Adj).unwrap();
        let (va, vb) = (a.view().unwrap(), b.view().unwrap());
        assert_eq!(va.chi.to_bitstring(), vb.chi.to_bitstring());
        assert_eq!(va.code.to_bitstring(), vb.code.to_bitstring());
        for (s, bits) in &va.sections {
            assert_eq!(bits.to_bitstring(), vb.section(*s).unwrap().to_bitstring());
        }
        assert!(vb.section(Section::Adj).is_some());
    }
}

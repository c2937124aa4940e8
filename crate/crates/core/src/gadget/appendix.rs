//! The explicit clause gadget on three 12-suns and one preimage for each of
//! zero, one and two wheels, shipped as checksummed JSON.

use std::path::Path;

use sha2::{Digest, Sha256};

use super::{GadgetBlueprint, SubGadget, CLAUSE_A, CLAUSE_B};
use crate::error::GadgetError;
use crate::graph::VertexLabel;
use crate::io::GraphJson;
use crate::tlg::{PreimageWitness, WitnessJson};

/// File name and SHA-256 of every shipped data file.
pub const APPENDIX_FILES: [(&str, &str); 4] = [
    ("clause_gadget.json", "5726766e82a53a42775dc8dcc5cdeab61cee3dd9c49ccb1e6070e4b33c97dc7b"),
    ("clause_preimage_0.json", "fba0aa7204b5865814ce7f59e2df8780dd1fc512a161175b635d8e95953728db"),
    ("clause_preimage_1.json", "ab6d4711829235571d951fbea20055c03717819f885147b01b449e8fe84e5f9f"),
    ("clause_preimage_2.json", "7c706f39bcecce30a950c8172b7fce7473091c7e3e360928066e544d90cc7281"),
];

const EMBEDDED: [&[u8]; 4] = [
    include_bytes!("../../data/clause_gadget.json"),
    include_bytes!("../../data/clause_preimage_0.json"),
    include_bytes!("../../data/clause_preimage_1.json"),
    include_bytes!("../../data/clause_preimage_2.json"),
];

fn checked(index: usize, bytes: &[u8]) -> Result<&str, GadgetError> {
    let (name, sum) = APPENDIX_FILES[index];
    if hex::encode(Sha256::digest(bytes)) != sum {
        return Err(GadgetError::Integrity(name.to_owned()));
    }
    std::str::from_utf8(bytes).map_err(|e| data_error(name, e))
}

fn data_error(name: &str, e: impl std::fmt::Display) -> GadgetError {
    GadgetError::Data {
        name: name.to_owned(),
        msg: e.to_string(),
    }
}

fn read(dir: &Path, index: usize) -> Result<Vec<u8>, GadgetError> {
    let name = APPENDIX_FILES[index].0;
    std::fs::read(dir.join(name)).map_err(|e| data_error(name, e))
}

/// Vertex `S/l/i` of the glued gadget. The three `b` vertices of each sun
/// carry the name of the `a` vertex of the previous sun they were merged into.
fn canonical_name(l: usize, i: usize) -> VertexLabel {
    let (l, i) = match i {
        12 => ((l + 1) % 3 + 1, 0),
        13 => ((l + 1) % 3 + 1, 2),
        14 => ((l + 1) % 3 + 1, 1),
        _ => (l, i),
    };
    VertexLabel::new(["S".to_owned(), l.to_string(), i.to_string()])
}

fn clause_blueprint(text: &str) -> Result<GadgetBlueprint, GadgetError> {
    let name = APPENDIX_FILES[0].0;
    let j: GraphJson = serde_json::from_str(text).map_err(|e| data_error(name, e))?;
    let graph = crate::graph::Graph::try_from(j).map_err(|e| data_error(name, e))?;
    let index = graph.label_index();
    let mut b = GadgetBlueprint::new("appendix-clause", graph);
    for l in 1..=3 {
        let vertices = (0..24)
            .map(|i| {
                let label = canonical_name(l, i);
                index
                    .get(&label)
                    .copied()
                    .ok_or_else(|| data_error(name, format!("missing vertex {label}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let v = &vertices;
        b.roles.insert(format!("S/{l}/{CLAUSE_A}"), vec![v[0], v[2], v[1]]);
        b.roles.insert(format!("S/{l}/{CLAUSE_B}"), vec![v[12], v[14], v[13]]);
        b.sub_gadgets.insert(format!("S/{l}/S"), SubGadget { k: 12, vertices });
    }
    b.validate()?;
    Ok(b)
}

fn preimage(index: usize, text: &str) -> Result<PreimageWitness, GadgetError> {
    let name = APPENDIX_FILES[index].0;
    let j: WitnessJson = serde_json::from_str(text).map_err(|e| data_error(name, e))?;
    PreimageWitness::try_from(j).map_err(|e| data_error(name, e))
}

fn preimage_index(wheels: usize) -> Result<usize, GadgetError> {
    if wheels > 2 {
        return Err(GadgetError::Data {
            name: "clause_preimage".into(),
            msg: format!("no shipped preimage with {wheels} wheels"),
        });
    }
    Ok(wheels + 1)
}

/// The 63-vertex clause gadget with `S/l/i` labels, its three 12-suns
/// registered as `S/l/S` and their clause triangles as roles.
pub fn load_appendix_clause_gadget() -> Result<GadgetBlueprint, GadgetError> {
    clause_blueprint(checked(0, EMBEDDED[0])?)
}

/// Shipped preimage of the clause gadget in which `wheels` of the three
/// 12-suns have a wheel preimage.
pub fn load_appendix_preimage(wheels: usize) -> Result<PreimageWitness, GadgetError> {
    let i = preimage_index(wheels)?;
    preimage(i, checked(i, EMBEDDED[i])?)
}

/// As [`load_appendix_clause_gadget`], reading from `dir` instead of the
/// embedded copy. The checksum is enforced.
pub fn load_appendix_clause_gadget_from(dir: &Path) -> Result<GadgetBlueprint, GadgetError> {
    let bytes = read(dir, 0)?;
    clause_blueprint(checked(0, &bytes)?)
}

pub fn load_appendix_preimage_from(dir: &Path, wheels: usize) -> Result<PreimageWitness, GadgetError> {
    let i = preimage_index(wheels)?;
    let bytes = read(dir, i)?;
    preimage(i, checked(i, &bytes)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_files_load() {
        let g = load_appendix_clause_gadget().unwrap();
        assert_eq!(g.graph.vertex_count(), 63);
        for w in 0..3 {
            let p = load_appendix_preimage(w).unwrap();
            assert_eq!(p.target(), &g.graph);
            assert_eq!(p.candidate().vertex_count(), 27 + w);
        }
        assert!(load_appendix_preimage(3).is_err());
    }

    #[test]
    fn programmatic_join_matches_shipped_graph() {
        let s = crate::gadget::make_clause_sun();
        let joined = crate::gadget::join_clause(&s, &s, &s).unwrap();
        let shipped = load_appendix_clause_gadget().unwrap();
        assert_eq!(joined.graph, shipped.graph);
        assert_eq!(joined.sub_gadgets, shipped.sub_gadgets);
    }

    #[test]
    fn tampered_bytes_fail_the_checksum() {
        let mut bytes = EMBEDDED[1].to_vec();
        let pos = bytes.iter().position(|&b| b == b'7').unwrap();
        bytes[pos] = b'8';
        assert!(matches!(checked(1, &bytes), Err(GadgetError::Integrity(_))));
    }

    #[test]
    fn directory_loading() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        assert_eq!(
            load_appendix_clause_gadget_from(&dir).unwrap(),
            load_appendix_clause_gadget().unwrap()
        );
        assert!(load_appendix_preimage_from(Path::new("/nonexistent"), 0).is_err());
    }
}

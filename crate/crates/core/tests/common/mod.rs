use std::fs;
use std::path::PathBuf;

use intgraph_core::cat::dsl::parse_proof_file;
use intgraph_core::cat::Proof;

/// Every `tests/corpus/*.proof` file as `(stem, proof, expected reduct)`.
pub fn corpus() -> Vec<(String, Proof, Option<Proof>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "proof"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let src = fs::read_to_string(&p).unwrap();
            let (proof, reduct) = parse_proof_file(&src).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_stem().unwrap().to_string_lossy().into_owned(), proof, reduct)
        })
        .collect()
}

use std::fs;
use std::path::PathBuf;

use hpilot::parser::{parse_task, print_task};

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "loc"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect()
}

#[test]
fn every_corpus_file_round_trips() {
    let files = corpus();
    assert!(files.len() >= 15);
    for (name, text) in files {
        let first = parse_task(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print_task(&first);
        let second = parse_task(&printed).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
        assert_eq!(first, second, "{name}\n{printed}");
        assert_eq!(print_task(&second), printed, "{name}");
    }
}

#[test]
fn crlf_input_is_accepted() {
    for (name, text) in corpus() {
        let crlf = text.replace('\n', "\r\n");
        assert_eq!(parse_task(&crlf).unwrap(), parse_task(&text).unwrap(), "{name}");
    }
}

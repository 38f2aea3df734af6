#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rftkit::cli::run_from_args;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn rftkit<S: AsRef<str>>(args: &[S]) -> Run {
    let mut argv = vec!["rftkit".to_string()];
    argv.extend(args.iter().map(|s| s.as_ref().to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_from_args(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Splits a printed command line, honouring single quotes.
pub fn shell_words(line: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut in_word = false;
    let mut quoted = false;
    for c in line.chars() {
        match c {
            '\'' => {
                quoted = !quoted;
                in_word = true;
            }
            c if c.is_whitespace() && !quoted => {
                if in_word {
                    words.push(std::mem::take(&mut cur));
                    in_word = false;
                }
            }
            c => {
                cur.push(c);
                in_word = true;
            }
        }
    }
    if in_word {
        words.push(cur);
    }
    words
}

pub fn effective_line(stdout: &str) -> String {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix("effective: "))
        .expect("effective configuration line")
        .to_string()
}

/// Re-runs the printed effective configuration, minus the program name.
pub fn rerun_effective(stdout: &str) -> Run {
    let words = shell_words(&effective_line(stdout));
    assert_eq!(words[0], "rftkit");
    rftkit(&words[1..])
}

pub fn p(path: &Path) -> String {
    path.display().to_string()
}

pub fn data_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn golden_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}

/// Regenerate golden files instead of comparing against them.
pub fn blessing() -> bool {
    std::env::var_os("RFTKIT_BLESS").is_some()
}

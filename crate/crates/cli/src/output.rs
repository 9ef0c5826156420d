use std::fs::File;
use std::io::{self, BufWriter, Stdout, Write};
use std::path::Path;

/// 17 significant digits: the printed value re-parses to the identical f64.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Buffered line output to stdout or a file, `\n` line endings.
pub enum OutputTarget {
    Stdout(BufWriter<Stdout>),
    File(BufWriter<File>),
}

impl OutputTarget {
    pub fn create(path: Option<&Path>) -> io::Result<Self> {
        Ok(match path {
            Some(p) => OutputTarget::File(BufWriter::new(File::create(p)?)),
            None => OutputTarget::Stdout(BufWriter::new(io::stdout())),
        })
    }

    pub fn line(&mut self, s: &str) -> io::Result<()> {
        match self {
            OutputTarget::Stdout(w) => writeln!(w, "{s}"),
            OutputTarget::File(w) => writeln!(w, "{s}"),
        }
    }

    pub fn finish(&mut self) -> io::Result<()> {
        match self {
            OutputTarget::Stdout(w) => w.flush(),
            OutputTarget::File(w) => w.flush(),
        }
    }
}

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::CliResult;

/// A CSV document: one `#` comment line recording the configuration, a
/// header, then rows.
pub struct Csv {
    comment: String,
    header: Vec<String>,
    body: String,
}

impl Csv {
    pub fn new(comment: impl Into<String>, header: &[&str]) -> Self {
        Csv { comment: comment.into(), header: header.iter().map(|s| s.to_string()).collect(), body: String::new() }
    }

    pub fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.body, "{}", fields.join(","));
    }

    /// Appends pre-rendered lines that already carry their own header.
    pub fn raw(comment: impl Into<String>, text: &str) -> Self {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default().split(',').map(str::to_string).collect();
        let mut body = String::new();
        for l in lines {
            body.push_str(l);
            body.push('\n');
        }
        Csv { comment: comment.into(), header, body }
    }

    pub fn render(&self) -> String {
        format!("# {}\n{}\n{}", self.comment, self.header.join(","), self.body)
    }

    pub fn columns(&self) -> &[String] {
        &self.header
    }
}

pub fn num(v: f64) -> String {
    format!("{v:.15e}")
}

pub fn coord(v: f64) -> String {
    format!("{v:.10}")
}

pub fn write(csv: &Csv, out: Option<&Path>) -> CliResult<()> {
    let text = csv.render();
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)?;
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// A matplotlib script plotting every column against the first.
pub fn plot_script(csv_path: &Path, columns: &[String]) -> String {
    let cols: Vec<String> = columns.iter().skip(1).map(|c| format!("{c:?}")).collect();
    format!(
        "import csv\nimport matplotlib.pyplot as plt\n\n\
         with open({path:?}) as fh:\n    rows = list(csv.DictReader(l for l in fh if not l.startswith('#')))\n\
         x = [float(r[{first:?}]) for r in rows]\n\
         for c in [{cols}]:\n    try:\n        plt.plot(x, [float(r[c]) for r in rows], label=c)\n    except ValueError:\n        pass\n\
         plt.xlabel({first:?})\nplt.legend()\nplt.savefig({png:?}, dpi=150)\n",
        path = csv_path.display().to_string(),
        first = columns.first().cloned().unwrap_or_default(),
        cols = cols.join(", "),
        png = csv_path.with_extension("png").display().to_string(),
    )
}

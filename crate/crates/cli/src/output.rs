use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Text,
    JsonLines,
}

/// Rendered output of one command plus its pass/fail status.
pub struct Report {
    emit: Emit,
    out: String,
    pub ok: bool,
}

impl Report {
    pub fn new(emit: Emit) -> Self {
        Self {
            emit,
            out: String::new(),
            ok: true,
        }
    }

    /// Adds a text line (text mode only).
    pub fn text(&mut self, line: impl AsRef<str>) {
        if self.emit == Emit::Text {
            self.out.push_str(line.as_ref());
            self.out.push('\n');
        }
    }

    /// Adds a JSON record (json-lines mode only).
    pub fn record(&mut self, value: Value) {
        if self.emit == Emit::JsonLines {
            self.out.push_str(&value.to_string());
            self.out.push('\n');
        }
    }

    pub fn fail(&mut self) {
        self.ok = false;
    }

    pub fn into_output(self) -> (String, bool) {
        (self.out, self.ok)
    }
}

/// A usage or input error: exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Output of one command: text lines, a structured payload and a verdict.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    pub data: Map<String, Value>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), lines: Vec::new(), data: Map::new(), pass: true }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.into(), value.into());
    }

    /// Records a named check, failing the report when it does not hold.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.pass &= ok;
        self.set(&key.replace([' ', '-'], "_"), ok);
        self.line(format!("{key}: {}", if ok { "yes" } else { "no" }));
    }

    pub fn exit_code(&self) -> u8 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = format!("# {}\n", self.command);
                for l in &self.lines {
                    s.push_str(l);
                    s.push('\n');
                }
                s.push_str(if self.pass { "result: pass\n" } else { "result: false\n" });
                s
            }
            Format::Json => {
                let v = json!({ "command": self.command, "pass": self.pass, "result": Value::Object(self.data.clone()) });
                serde_json::to_string_pretty(&v).expect("json") + "\n"
            }
        }
    }
}

pub fn render_error(command: &str, err: &impl std::fmt::Display, format: Format) -> String {
    match format {
        Format::Text => format!("error: {err}\n"),
        Format::Json => serde_json::to_string_pretty(&json!({ "command": command, "error": err.to_string() })).expect("json") + "\n",
    }
}

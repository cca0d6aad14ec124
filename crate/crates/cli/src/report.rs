//! Line-oriented reports with a deterministic body: identical
//! (command, seed, modulus) produce byte-identical stdout. Timings go to
//! stderr only. The JSON emission mirrors the deterministic fields.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemResult {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for ItemResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ItemResult::Pass => write!(f, "pass"),
            ItemResult::Fail => write!(f, "fail"),
            ItemResult::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    pub fields: Vec<(String, String)>,
    pub result: ItemResult,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl Item {
    pub fn new(name: impl Into<String>) -> Self {
        Item {
            name: name.into(),
            fields: Vec::new(),
            result: ItemResult::Pass,
            wall_ms: 0,
        }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn check(&mut self, key: impl Into<String>, ok: bool, detail: impl ToString) -> &mut Self {
        self.fields
            .push((key.into(), format!("{} ({})", if ok { "ok" } else { "VIOLATION" }, detail.to_string())));
        if !ok {
            self.result = ItemResult::Fail;
        }
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub modulus: u64,
    pub seed: u64,
    pub items: Vec<Item>,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl RunReport {
    pub fn new(command: String, modulus: u64, seed: u64) -> Self {
        RunReport {
            command,
            modulus,
            seed,
            items: Vec::new(),
            pass: 0,
            fail: 0,
            inconclusive: 0,
        }
    }

    pub fn push(&mut self, item: Item) {
        match item.result {
            ItemResult::Pass => self.pass += 1,
            ItemResult::Fail => self.fail += 1,
            ItemResult::Inconclusive => self.inconclusive += 1,
        }
        self.items.push(item);
    }

    pub fn exit_code(&self) -> i32 {
        if self.fail == 0 && self.inconclusive == 0 {
            0
        } else {
            1
        }
    }

    /// The deterministic text body.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("pdq-report-v1\n");
        out.push_str(&format!("command={}\n", self.command));
        out.push_str(&format!("modulus={}\n", self.modulus));
        out.push_str(&format!("seed={}\n", self.seed));
        for item in &self.items {
            out.push('\n');
            out.push_str(&format!("item={}\n", item.name));
            for (k, v) in &item.fields {
                out.push_str(&format!("{k}={v}\n"));
            }
            out.push_str(&format!("result={}\n", item.result));
        }
        out.push('\n');
        out.push_str(&format!(
            "summary pass={} fail={} inconclusive={}\n",
            self.pass, self.fail, self.inconclusive
        ));
        out
    }

    pub fn emit(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).unwrap());
        } else {
            print!("{}", self.render());
        }
        for item in &self.items {
            eprintln!("time_ms {} {}", item.name, item.wall_ms);
        }
    }
}

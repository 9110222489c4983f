// Copyright 2021 Example Authors
// Licensed under the Apache License, Version 2.0

/* Module-level
   notes. */
pub fn join(a: &str, b: &str) -> String {
    let sep = "//"; // separator
    let raw = r"C:\dir\"; // raw path
    let fancy = r#"say "/* hi */""#;
    format!("{a}{sep}{b}{raw}{fancy}")
}

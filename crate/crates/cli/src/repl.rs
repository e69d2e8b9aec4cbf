use std::collections::HashMap;
use std::io::{BufRead, Write};

use wittlab_core::expr::parse_expression;
use wittlab_core::{Expr, FieldTower};

use crate::commands::{answer, Input, QueryOptions, Verb};

const HELP: &str = "\
:field SPEC        switch field (clears bindings)
:let NAME = EXPR   bind an expression
:quit              leave
VERB EXPR|NAME     eval aniso iw hyp sig torsion index division trace norm
EXPR               same as eval";

/// Line-oriented loop over `input`. Errors are printed and the loop continues.
pub fn run(
    field: FieldTower,
    opts: &QueryOptions,
    input: impl BufRead,
    mut out: impl Write,
    prompt: bool,
) -> std::io::Result<()> {
    let mut field = field;
    let mut bindings: HashMap<String, Expr> = HashMap::new();
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "{field}> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match eval_line(&mut field, &mut bindings, opts, line) {
            Ok(Some(text)) => writeln!(out, "{text}")?,
            Ok(None) => break,
            Err(msg) => writeln!(out, "error: {msg}")?,
        }
    }
    Ok(())
}

/// `Ok(None)` ends the session.
fn eval_line(
    field: &mut FieldTower,
    bindings: &mut HashMap<String, Expr>,
    opts: &QueryOptions,
    line: &str,
) -> Result<Option<String>, String> {
    if let Some(directive) = line.strip_prefix(':') {
        let (cmd, rest) = directive.split_once(char::is_whitespace).unwrap_or((directive, ""));
        let rest = rest.trim();
        return match cmd {
            "quit" | "q" => Ok(None),
            "help" => Ok(Some(HELP.to_string())),
            "field" => {
                *field = FieldTower::parse(rest).map_err(|e| e.to_string())?;
                bindings.clear();
                Ok(Some(format!("field {field}")))
            }
            "let" => {
                let (name, src) = rest.split_once('=').ok_or("usage: :let NAME = EXPR")?;
                let name = name.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(format!("invalid binding name `{name}`"));
                }
                let e = parse_expression(field, src).map_err(|e| e.to_string())?;
                let text = format!("{name} = {e}");
                bindings.insert(name.to_string(), e);
                Ok(Some(text))
            }
            _ => Err(format!("unknown directive `:{cmd}`")),
        };
    }
    let (verb, rest) = match line.split_once(char::is_whitespace) {
        Some((head, rest)) => match Verb::from_name(head) {
            Some(v) => (v, rest.trim()),
            None => (Verb::Eval, line),
        },
        None => (Verb::Eval, line),
    };
    let input = match bindings.get(rest) {
        Some(e) => Input::Parsed(e),
        None => Input::Source(rest),
    };
    answer(verb, field, &input, opts).map(|a| Some(a.text)).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use wittlab_core::quadform::SearchConfig;

    fn session(script: &str) -> String {
        let opts = QueryOptions { algo: "ramification".into(), witness: false, search: SearchConfig::default() };
        let mut out = Vec::new();
        run(FieldTower::parse("C").unwrap(), &opts, script.as_bytes(), &mut out, false).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn field_switch_and_bindings() {
        let out = session(
            ":field C((t1))((t2))\n:let p = <<t1,t2>>\naniso p\n:field C((t1))\naniso p\nindex (t1,t1)\n:quit\naniso <1>\n",
        );
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "field C((t1))((t2))");
        assert_eq!(lines[1], "p = <1,t1,t2,t1*t2>");
        assert_eq!(lines[2], "anisotropic, dim 4, witt_index 0");
        assert_eq!(lines[3], "field C((t1))");
        assert!(lines[4].starts_with("error: "), "{}", lines[4]);
        assert_eq!(lines[5], "1");
        assert_eq!(lines.len(), 6);
    }

    #[test]
    fn bare_expressions_and_errors() {
        let out = session("2 x <1>\n:nope\n<q>\n");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "<1,1>");
        assert_eq!(lines[1], "error: unknown directive `:nope`");
        assert_eq!(lines[2], "error: unknown variable `q`");
    }
}

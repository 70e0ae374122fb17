use crate::error::{Error, Result};

/// Splits PD text into crossing tuples and a crossingless-unknot count.
///
/// Terms are `X[a,b,c,d]` and `O[k]`, separated by whitespace; spaces are
/// allowed inside the brackets and `#` comments run to end of line.
pub(super) fn parse_terms(text: &str) -> Result<(Vec<[u32; 4]>, usize)> {
    let mut body = String::with_capacity(text.len());
    for line in text.lines() {
        body.push_str(line.split('#').next().unwrap_or(""));
        body.push('\n');
    }

    let mut crossings = Vec::new();
    let mut unknots = 0usize;
    let mut rest = body.trim_start();
    while !rest.is_empty() {
        let mut chars = rest.chars();
        let kind = chars.next().unwrap_or(' ');
        let after = chars.as_str().trim_start();
        if !after.starts_with('[') {
            return Err(Error::Parse(format!("expected `[` after `{kind}`")));
        }
        let close = after.find(']').ok_or_else(|| Error::Parse("unterminated `[`".into()))?;
        let args: Vec<&str> = after[1..close].split(',').map(str::trim).collect();
        match kind {
            'X' => {
                if args.len() != 4 {
                    return Err(Error::Parse(format!("crossing needs 4 labels, got {}", args.len())));
                }
                let mut x = [0u32; 4];
                for (slot, a) in x.iter_mut().zip(&args) {
                    *slot = parse_label(a)?;
                }
                crossings.push(x);
            }
            'O' => {
                if args.len() != 1 {
                    return Err(Error::Parse("`O[...]` takes one count".into()));
                }
                let k: usize = parse_count(args[0])?;
                unknots = unknots.checked_add(k).ok_or_else(|| Error::Parse("unknot count overflows".into()))?;
            }
            other => {
                return Err(Error::Parse(format!("unknown term `{other}`")));
            }
        }
        rest = after[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        }
    }
    if crossings.is_empty() && unknots == 0 {
        return Err(Error::Parse("empty diagram".into()));
    }
    Ok((crossings, unknots))
}

fn parse_label(s: &str) -> Result<u32> {
    match parse_count(s)? {
        0 => Err(Error::Parse("edge labels must be positive".into())),
        v => u32::try_from(v).map_err(|_| Error::Parse(format!("edge label `{s}` too large"))),
    }
}

fn parse_count(s: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("expected a nonnegative integer, got `{s}`")));
    }
    s.parse().map_err(|_| Error::Parse(format!("integer `{s}` out of range")))
}

pub(super) fn render(crossings: &[[u32; 4]], unknots: usize) -> String {
    let mut terms: Vec<String> = crossings.iter().map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3])).collect();
    if unknots > 0 {
        terms.push(format!("O[{unknots}]"));
    }
    terms.join(" ")
}

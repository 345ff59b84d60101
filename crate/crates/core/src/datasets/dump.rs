//! Unified instance dump shared by all three tasks.
//!
//! One instance per line, eight tab-separated columns:
//! `task id lemma pos spans text1 text2 gold`. `spans` is a comma-separated
//! list of `start-end` character ranges. For TSV rows `text2` holds the
//! candidate (`key:<sense key>` or `def:<definition>`); for WSD rows it is
//! empty. `gold` is `T`/`F`, a sense key, or `-` when unknown. Tabs and
//! newlines inside fields are backslash-escaped.

use std::io::{self, Write};
use std::ops::Range;

use crate::inventory::escape_field;
use crate::task::{TsvInstance, WicInstance, WsdInstance};

fn span(r: Range<usize>) -> String {
    format!("{}-{}", r.start, r.end)
}

fn flag(gold: Option<bool>) -> &'static str {
    match gold {
        Some(true) => "T",
        Some(false) => "F",
        None => "-",
    }
}

#[allow(clippy::too_many_arguments)]
fn row<W: Write>(
    out: &mut W,
    task: &str,
    id: &str,
    lemma: &str,
    pos: char,
    spans: &str,
    text1: &str,
    text2: &str,
    gold: &str,
) -> io::Result<()> {
    writeln!(
        out,
        "{task}\t{}\t{}\t{pos}\t{spans}\t{}\t{}\t{}",
        escape_field(id),
        escape_field(lemma),
        escape_field(text1),
        escape_field(text2),
        escape_field(gold)
    )
}

pub fn write_wic_dump<W: Write>(mut out: W, instances: &[WicInstance]) -> io::Result<()> {
    for i in instances {
        let spans = format!("{},{}", span(i.context1.span()), span(i.context2.span()));
        row(
            &mut out,
            "wic",
            &i.id,
            &i.target.lemma,
            i.target.pos.synset_type(),
            &spans,
            i.context1.text(),
            i.context2.text(),
            flag(i.gold),
        )?;
    }
    Ok(())
}

pub fn write_tsv_dump<W: Write>(mut out: W, instances: &[TsvInstance]) -> io::Result<()> {
    for i in instances {
        row(
            &mut out,
            "tsv",
            &i.id,
            &i.target.lemma,
            i.target.pos.synset_type(),
            &span(i.context.span()),
            i.context.text(),
            &i.candidate.to_string(),
            flag(i.gold),
        )?;
    }
    Ok(())
}

pub fn write_wsd_dump<W: Write>(mut out: W, instances: &[WsdInstance]) -> io::Result<()> {
    for i in instances {
        row(
            &mut out,
            "wsd",
            &i.id,
            &i.target.lemma,
            i.target.pos.synset_type(),
            &span(i.context.span()),
            i.context.text(),
            "",
            i.gold.as_deref().unwrap_or("-"),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inventory::PartOfSpeech;
    use crate::task::{Context, SenseRef, TargetWord};

    #[test]
    fn wic_and_tsv_rows() {
        let wic = WicInstance {
            id: "train:1".into(),
            context1: Context::new("Room and board .", 9, 14).unwrap(),
            context2: Context::new("He nailed boards", 10, 16).unwrap(),
            target: TargetWord::new("board", PartOfSpeech::Noun),
            gold: Some(false),
        };
        let mut out = Vec::new();
        write_wic_dump(&mut out, &[wic]).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "wic\ttrain:1\tboard\tn\t9-14,10-16\tRoom and board .\tHe nailed boards\tF\n"
        );

        let tsv = TsvInstance {
            id: "t:1".into(),
            context: Context::new("a bank", 2, 6).unwrap(),
            target: TargetWord::new("bank", PartOfSpeech::Noun),
            candidate: SenseRef::Definition("land\tby water".into()),
            gold: None,
        };
        let mut out = Vec::new();
        write_tsv_dump(&mut out, &[tsv]).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "tsv\tt:1\tbank\tn\t2-6\ta bank\tdef:land\\tby water\t-\n"
        );
    }
}

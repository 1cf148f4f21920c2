//! Text form of diagrams: `m,n:{1,4}{2,3,4',5'}{1',2',6'}{3'}`.
//!
//! Primes mark lower vertices. The header is mandatory so that diagrams with
//! an empty row are unambiguous (`0,0:` is `ι_0`).

use std::fmt;
use std::str::FromStr;

use super::partition::{fmt_vertex, Partition, Vertex};
use crate::error::{Error, Result};

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}:", self.m(), self.n())?;
        write_blocks(f, &self.blocks())
    }
}

pub(crate) fn write_blocks(f: &mut impl fmt::Write, blocks: &[Vec<Vertex>]) -> fmt::Result {
    for block in blocks {
        f.write_char('{')?;
        for (k, &v) in block.iter().enumerate() {
            if k > 0 {
                f.write_char(',')?;
            }
            f.write_str(&fmt_vertex(v))?;
        }
        f.write_char('}')?;
    }
    Ok(())
}

/// Block list without the `m,n:` header.
pub fn format_blocks(a: &Partition) -> String {
    let mut s = String::new();
    write_blocks(&mut s, &a.blocks()).unwrap();
    s
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let (m, n) = cur.header()?;
        let blocks = cur.blocks()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        Partition::from_blocks(m, n, &blocks).map_err(|e| Error::Parse {
            position: 0,
            message: e.to_string(),
        })
    }
}

/// Minimal recursive-descent scanner shared by the diagram and linear
/// combination parsers. Positions are byte offsets into the input.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn source(&self) -> &'a str {
        self.src
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected `{c}`, found `{x}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Parse {
            position: start,
            message: "number too large".into(),
        })
    }

    /// Parses `m,n:` if present at the cursor.
    pub(crate) fn try_header(&mut self) -> Result<Option<(usize, usize)>> {
        let save = self.pos;
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos = save;
            return Ok(None);
        }
        let m = self.number()?;
        self.skip_ws();
        if self.peek() != Some(',') {
            self.pos = save;
            return Ok(None);
        }
        self.bump();
        let n = self.number()?;
        self.expect(':')?;
        Ok(Some((m, n)))
    }

    pub(crate) fn header(&mut self) -> Result<(usize, usize)> {
        self.try_header()?
            .ok_or_else(|| self.error("expected `m,n:` header"))
    }

    fn vertex(&mut self) -> Result<Vertex> {
        let start = self.pos;
        let v = self.number()?;
        if v == 0 {
            return Err(Error::Parse {
                position: start,
                message: "vertices are numbered from 1".into(),
            });
        }
        let v = Vertex::try_from(v).map_err(|_| Error::Parse {
            position: start,
            message: "vertex too large".into(),
        })?;
        self.skip_ws();
        if self.peek() == Some('\'') {
            self.bump();
            Ok(-v)
        } else {
            Ok(v)
        }
    }

    /// Parses a (possibly empty) sequence of `{…}` blocks.
    pub(crate) fn blocks(&mut self) -> Result<Vec<Vec<Vertex>>> {
        let mut blocks = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() != Some('{') {
                return Ok(blocks);
            }
            self.bump();
            let mut block = vec![self.vertex()?];
            loop {
                self.skip_ws();
                match self.bump() {
                    Some(',') => block.push(self.vertex()?),
                    Some('}') => break,
                    Some(c) => {
                        self.pos -= c.len_utf8();
                        return Err(self.error(format!("expected `,` or `}}`, found `{c}`")));
                    }
                    None => return Err(self.error("unterminated block")),
                }
            }
            blocks.push(block);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let s = "4,6:{1,4}{2,3,4',5'}{1',2',6'}{3'}";
        let a: Partition = s.parse().unwrap();
        assert_eq!(a.to_string(), s);
        let messy: Partition = " 4 , 6 : {4,1} {5',4',3,2}{3'}{6',1',2'} ".parse().unwrap();
        assert_eq!(messy, a);
        assert_eq!("0,0:".parse::<Partition>().unwrap(), Partition::identity(0));
        assert_eq!(Partition::identity(0).to_string(), "0,0:");
    }

    #[test]
    fn json_round_trip() {
        let a: Partition = "4,6:{1,4}{2,3,4',5'}{1',2',6'}{3'}".parse().unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"m":4,"n":6,"blocks":[[1,4],[2,3,-4,-5],[-1,-2,-6],[-3]]}"#
        );
        assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), a);
        assert!(serde_json::from_str::<Partition>(r#"{"m":1,"n":1,"blocks":[[1]]}"#).is_err());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "2,2:{1,2}{1',x}".parse::<Partition>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 13),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            "{1,1'}".parse::<Partition>(),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!("1,1:{1,1'".parse::<Partition>().is_err());
        assert!("1,1:{1}{1'} junk".parse::<Partition>().is_err());
        assert!("1,1:{0,1'}".parse::<Partition>().is_err());
        assert!("1,1:{1}".parse::<Partition>().is_err());
    }
}

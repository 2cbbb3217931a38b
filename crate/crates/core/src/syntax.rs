//! Whitespace-insensitive cursor shared by the expression parsers.

use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub fn peek2(&mut self) -> Option<char> {
        self.skip_ws();
        let mut it = self.src[self.pos..].chars();
        it.next();
        // whitespace between the two characters is insignificant too
        it.find(|c| !c.is_whitespace())
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    /// 1-based column of the next significant character.
    pub fn column(&mut self) -> usize {
        self.skip_ws();
        self.src[..self.pos].chars().count() + 1
    }

    pub fn error(&mut self, message: impl Into<String>) -> Error {
        let column = self.column();
        Error::parse(column, message)
    }

    /// Unsigned decimal digits (whitespace allowed between digits is not).
    pub fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    pub fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let d = self
            .digits()
            .ok_or_else(|| self.error("expected an integer"))?;
        let v: i64 = d.parse().map_err(|_| self.error("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    pub fn usize(&mut self) -> Result<usize> {
        let d = self
            .digits()
            .ok_or_else(|| self.error("expected an index"))?;
        d.parse().map_err(|_| self.error("index out of range"))
    }
}

//! Text preprocessing: tokenization, stopword removal and Porter stemming.

mod porter;

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

pub use porter::porter_stem;

const SMART_STOPLIST: &str = include_str!("smart_stoplist.txt");

/// Split on every character outside `[A-Za-z0-9]` and lowercase the pieces.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|piece| !piece.is_empty())
        .map(|piece| piece.to_ascii_lowercase())
        .collect()
}

/// A set of lowercase alphanumeric words removed before stemming.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stoplist {
    words: HashSet<String>,
    rejected: Vec<String>,
}

impl Stoplist {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The bundled SMART system list.
    pub fn smart() -> Self {
        Self::parse(SMART_STOPLIST)
    }

    /// Build from arbitrary words. Entries are lowercased; entries that would
    /// not survive tokenization unchanged (apostrophes, hyphens, non-ASCII)
    /// can never match a token and are kept aside in [`Stoplist::rejected`].
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut list = Self::default();
        for word in words {
            let word = word.as_ref().trim().to_ascii_lowercase();
            if word.is_empty() {
                continue;
            }
            if word.bytes().all(|b| b.is_ascii_alphanumeric()) {
                list.words.insert(word);
            } else {
                list.rejected.push(word);
            }
        }
        list
    }

    /// Parse stoplist file content: words separated by whitespace or newlines,
    /// `#` starts a comment that runs to the end of the line.
    pub fn parse(content: &str) -> Self {
        Self::from_words(
            content.lines().map(|line| line.split('#').next().unwrap_or("")).flat_map(str::split_whitespace),
        )
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&content))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn rejected(&self) -> &[String] {
        &self.rejected
    }
}

pub fn remove_stopwords(tokens: Vec<String>, stoplist: &Stoplist) -> Vec<String> {
    tokens.into_iter().filter(|t| !stoplist.contains(t)).collect()
}

/// tokenize, drop stopwords, stem, in that order.
pub fn pipeline(text: &str, stoplist: &Stoplist) -> Vec<String> {
    remove_stopwords(tokenize(text), stoplist).iter().map(|t| porter_stem(t)).collect()
}

//! LZ77 factorization in `O(n/d)` words of working space.
//!
//! The text is split into `d` blocks. Each block gets a full suffix-array
//! based index, the text before it is scanned through that index to get
//! matching statistics, and those are inverted and merged with the block's
//! own longest-previous-factor array to parse the block. Only one block index
//! is alive at a time.
//!
//! ```
//! use lzscan::{decode, lz_parse, ParseOptions};
//!
//! let text = b"abaababaabaab";
//! let parse = lz_parse(text, &ParseOptions::with_block_size(4)).unwrap();
//! assert_eq!(decode(&parse).unwrap(), text);
//! ```

pub mod block_index;
pub mod error;
pub mod format;
pub mod lpf_parse;
pub mod marks;
pub mod matching_stats;
pub mod ms_invert;
pub mod oracle;
pub mod sais;
pub mod two_way;
pub mod word;

pub use block_index::{BlockIndex, IndexOptions, Occurrence, SaInterval, SENTINEL};
pub use error::{Error, Result};
pub use format::Format;
pub use lpf_parse::{
    decode, decode_phrases, extend_last_phrase, factorize_block, lpf_of_block, lz_parse, lz_parse_report, lz_parse_with,
    merge_lpf, Factorization, ParseOptions, ParseReport, Phrase, DEFAULT_BLOCK_SIZE, DEFAULT_SKIP_THRESHOLD,
};
pub use marks::PhraseMarks;
pub use matching_stats::{ms_scan, IntervalState, MsEntry, MsMode, RowState, ScanStart, ScanState, Skip};
pub use ms_invert::MsInverter;
pub use word::IndexWord;

/// Block index with 32-bit words; blocks up to 4 GiB.
pub type BlockIndex32<'t> = BlockIndex<'t, u32>;
/// Block index with 64-bit words.
pub type BlockIndex64<'t> = BlockIndex<'t, u64>;
/// Block index with 16-bit words; blocks up to 64 KiB.
pub type BlockIndex16<'t> = BlockIndex<'t, u16>;

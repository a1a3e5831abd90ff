"""Extractive single-document summarization with lexical chains.

Word senses are resolved by depth-limited WordNet graph traversal, chains are
grown with a bigram-aware Lesk comparator, clustered by sentence occurrence,
and turned into scored topic sequences from which a word-budgeted summary is
selected.
"""

from .chains import LeskParams, LexicalChain, lesk_score, pair_score
from .errors import LexsumError
from .summarizer import Summary, SummarizerConfig, summarize
from .text import Document, split_sentences, tokenize
from .wordnet import KnowledgeBase, load_wordnet

__version__ = "0.1.0"

__all__ = [
    "Document",
    "KnowledgeBase",
    "LeskParams",
    "LexicalChain",
    "LexsumError",
    "Summary",
    "SummarizerConfig",
    "lesk_score",
    "load_wordnet",
    "pair_score",
    "split_sentences",
    "summarize",
    "tokenize",
]

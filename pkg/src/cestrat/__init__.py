"""Context-embedding strategies over first-order terms."""

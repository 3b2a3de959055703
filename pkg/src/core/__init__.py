"""Core plumbing: configuration, logging, check reports and error types."""

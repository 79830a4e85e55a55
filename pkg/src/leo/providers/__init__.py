"""Provider adapters: mock, OMERO-style repository, eLabFTW-style notebook."""

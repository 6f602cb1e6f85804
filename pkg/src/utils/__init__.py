# Shared helpers: errors, logging, seeded streams and result files

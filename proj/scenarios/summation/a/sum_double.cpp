// The component itself serves this use case; no adaptation code.

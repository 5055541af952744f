"""Binary finite fields and c-differential analysis of power maps."""

"""Operations on specialization semilattices and their extensions."""

# Dense complex linear algebra

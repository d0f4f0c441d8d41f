def pressure_stat(en):
    en.setLinkStatus(en.getLinkIndex("110"), 0)
    res = en.getComputedHydraulicTimeSeries()
    return max(max(row) for row in res.Pressure)

result = pressure_stat(en)

def water_age_stat(en):
    res = en.getComputedQualityTimeSeries()
    return len(res.NodeQuality)

result = water_age_stat(en)

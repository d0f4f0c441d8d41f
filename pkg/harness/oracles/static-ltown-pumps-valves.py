result = en.getLinkPumpCount() + en.getLinkValveCount()
